//! Calibration script for the gen_field_2d spectral shape.
//!
//! The generator scales Fourier amplitudes by |k|^-(H + offset). This scan
//! measures the 2D-DFA exponent recovered at several (H, offset) combinations
//! so the offset constant frozen in synth::FIELD2D_SPECTRAL_OFFSET can be
//! chosen (and re-checked) from committed, reproducible output.
//!
//! Run with: cargo run --release --example calibrate_field2d

use crossfrac::kernel::make_scale_grid;
use crossfrac::synth::{gen_field_2d_with_offset, Seed};
use crossfrac::dfa_2d;

fn main() {
    let size = 256;
    let n_seeds = 8;
    let grid = make_scale_grid(size, 20).unwrap();
    println!("size={size} seeds={n_seeds} scales {:?}", grid.scales);
    println!("{:>6} {:>8} {:>10} {:>10}", "H", "offset", "mean_alpha", "bias");
    for &h in &[0.3, 0.5, 0.8] {
        for &offset in &[-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5] {
            let mut sum = 0.0;
            for seed in 0..n_seeds {
                let plane = gen_field_2d_with_offset(size, h, Seed(seed), offset).unwrap();
                let alpha = dfa_2d(&plane, &grid, None).unwrap().exponent;
                sum += alpha;
            }
            let mean = sum / n_seeds as f64;
            println!("{h:>6.2} {offset:>8.2} {mean:>10.4} {:>10.4}", mean - h);
        }
    }
}

//! Regenerates the committed synthetic fixtures under tests/fixtures/.
//!
//! Six audio clips (three stationary fGn clips classified happy, three
//! integrated clips whose alpha lands above the 1.5 threshold) and six color
//! images from the 2D generator, plus the manifest that drives the batch
//! acceptance test. Output is deterministic; re-running must be a no-op diff.
//!
//! Run with: cargo run --release --example make_fixtures

use std::fs;
use std::path::Path;

use crossfrac::io::{write_ppm, write_wav};
use crossfrac::synth::{gen_fgn_1d, Seed};
use crossfrac::types::{Plane, RgbImage, TimeSeries};

fn peak_normalize(series: &TimeSeries) -> TimeSeries {
    let peak = series.samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = if peak > 0.0 { 0.999 / peak } else { 1.0 };
    TimeSeries {
        samples: series.samples.iter().map(|v| v * scale).collect(),
        sample_rate_hz: series.sample_rate_hz,
        source_id: series.source_id.clone(),
    }
}

fn to_gray_levels(p: &Plane) -> Plane {
    let (lo, hi) = p
        .values()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let span = if hi > lo { hi - lo } else { 1.0 };
    p.map(|v| ((v - lo) / span * 255.0).round())
}

fn cumsum(series: &TimeSeries) -> TimeSeries {
    let mut acc = 0.0;
    TimeSeries {
        samples: series
            .samples
            .iter()
            .map(|v| {
                acc += v;
                acc
            })
            .collect(),
        sample_rate_hz: series.sample_rate_hz,
        source_id: format!("{}-integrated", series.source_id),
    }
}

fn field_channel(size: usize, hurst: f64, seed: u64, tag: crossfrac::ChannelTag) -> Plane {
    let p = crossfrac::synth::gen_field_2d(size, hurst, Seed(seed)).unwrap();
    let q = to_gray_levels(&p);
    Plane::new(q.values().to_vec(), size, size, tag).unwrap()
}

fn main() {
    let dir = Path::new("crates/core/tests/fixtures");
    fs::create_dir_all(dir).unwrap();
    let len = 1 << 14;
    let rate = 8000;

    // happy clips: stationary fGn, alpha well below 1.5
    for (i, (h, seed)) in [(0.55, 101u64), (0.60, 102), (0.65, 103)].iter().enumerate() {
        let mut s = gen_fgn_1d(len, *h, Seed(*seed)).unwrap();
        s.sample_rate_hz = rate;
        write_wav(dir.join(format!("clip{}.wav", i + 1)), &peak_normalize(&s)).unwrap();
    }
    // sad clips: integrated fGn, alpha near H + 1 > 1.5
    for (i, (h, seed)) in [(0.60, 104u64), (0.65, 105), (0.70, 106)].iter().enumerate() {
        let mut s = gen_fgn_1d(len, *h, Seed(*seed)).unwrap();
        s.sample_rate_hz = rate;
        write_wav(
            dir.join(format!("clip{}.wav", i + 4)),
            &peak_normalize(&cumsum(&s)),
        )
        .unwrap();
    }

    // six 128x128 color images; channels drawn independently per seed
    let specs: [(f64, u64); 6] = [
        (0.40, 201),
        (0.50, 202),
        (0.60, 203),
        (0.70, 204),
        (0.75, 205),
        (0.80, 206),
    ];
    for (i, (h, seed)) in specs.iter().enumerate() {
        let img = RgbImage::new(
            field_channel(128, *h, *seed, crossfrac::ChannelTag::Red),
            field_channel(128, *h, seed + 10, crossfrac::ChannelTag::Green),
            field_channel(128, *h, seed + 20, crossfrac::ChannelTag::Blue),
        )
        .unwrap();
        write_ppm(dir.join(format!("img{}.ppm", i + 1)), &img).unwrap();
    }

    let manifest = serde_json::json!({
        "schema_version": 1,
        "config": { "n_scales": 20, "scale_range": null, "fit_range": null },
        "stimuli": [
            { "id": "clip1", "modality": "audio", "path": "clip1.wav", "target": "happy",
              "ratings": { "Anger": 1.00, "Fear": 1.00, "Happy": 7.33, "Sad": 1.00 } },
            { "id": "clip2", "modality": "audio", "path": "clip2.wav", "target": "happy",
              "ratings": { "Anger": 1.00, "Fear": 1.00, "Happy": 7.17, "Sad": 1.17 } },
            { "id": "clip3", "modality": "audio", "path": "clip3.wav", "target": "happy",
              "ratings": { "Anger": 1.00, "Fear": 1.00, "Happy": 7.17, "Sad": 1.00 } },
            { "id": "clip4", "modality": "audio", "path": "clip4.wav", "target": "sad",
              "ratings": { "Anger": 1.17, "Fear": 1.00, "Happy": 1.00, "Sad": 7.67 } },
            { "id": "clip5", "modality": "audio", "path": "clip5.wav", "target": "sad",
              "ratings": { "Anger": 1.00, "Fear": 1.33, "Happy": 1.17, "Sad": 7.50 } },
            { "id": "clip6", "modality": "audio", "path": "clip6.wav", "target": "sad",
              "ratings": { "Anger": 1.00, "Fear": 1.67, "Happy": 1.00, "Sad": 7.50 } },
            { "id": "img1", "modality": "image", "path": "img1.ppm", "target": "happy",
              "ratings": { "Anger": 0.35, "Fear": 0.20, "Happy": 8.91, "Sad": 0.62 } },
            { "id": "img2", "modality": "image", "path": "img2.ppm", "target": "happy",
              "ratings": { "Anger": 0.10, "Fear": 0.05, "Happy": 9.17, "Sad": 0.13 } },
            { "id": "img3", "modality": "image", "path": "img3.ppm", "target": "happy",
              "ratings": { "Anger": 2.12, "Fear": 0.25, "Happy": 8.29, "Sad": 0.23 } },
            { "id": "img4", "modality": "image", "path": "img4.ppm", "target": "sad",
              "ratings": { "Anger": 1.71, "Fear": 1.33, "Happy": 0.65, "Sad": 6.95 } },
            { "id": "img5", "modality": "image", "path": "img5.ppm", "target": "sad",
              "ratings": { "Anger": 0.09, "Fear": 1.27, "Happy": 2.15, "Sad": 6.88 } },
            { "id": "img6", "modality": "image", "path": "img6.ppm", "target": "sad",
              "ratings": { "Anger": 0.90, "Fear": 0.32, "Happy": 2.75, "Sad": 6.35 } }
        ]
    });
    let mut text = serde_json::to_string_pretty(&manifest).unwrap();
    text.push('\n');
    fs::write(dir.join("manifest.json"), text).unwrap();
    println!("fixtures written to {}", dir.display());
}

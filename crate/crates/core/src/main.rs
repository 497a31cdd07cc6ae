use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crossfrac::io::{load_image, load_series_csv, load_wav, write_pgm, write_wav};
use crossfrac::pipeline::{self, ReportFormat};
use crossfrac::synth;
use crossfrac::types::{to_grayscale, Plane, RgbImage, TimeSeries};
use crossfrac::{
    dcca_1d, dfa_1d, dfa_2d, image_pair_coefficient, make_scale_grid, ScaleGrid, Seed,
};

#[derive(Parser)]
#[command(name = "crossfrac", version, about = "DFA/DCCA scaling analysis of audio and image stimuli")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full batch study over a stimulus manifest
    Analyze {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Scale grid override as MIN:MAX:N
        #[arg(long)]
        scales: Option<String>,
        /// Restrict the log-log fit to scales in LO:HI
        #[arg(long, value_name = "LO:HI")]
        fit_range: Option<String>,
    },
    /// 1D DFA of a single audio file (.wav) or numeric series (.csv)
    Dfa1d { input: PathBuf },
    /// 2D DFA of a single image (.pgm/.ppm)
    Dfa2d {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Channel::Gray)]
        channel: Channel,
    },
    /// DCCA between two files of the same modality
    Dcca { file_a: PathBuf, file_b: PathBuf },
    /// Write synthetic fixtures with known scaling exponents
    Synth {
        #[command(subcommand)]
        generator: Generator,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Channel {
    R,
    G,
    B,
    Gray,
}

#[derive(Subcommand)]
enum Generator {
    /// iid Gaussian noise series, written as 16-bit WAV
    Noise1d {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 8000)]
        rate: u32,
    },
    /// fractional Gaussian noise series (DFA alpha targets H), 16-bit WAV
    Fgn1d {
        #[arg(long)]
        hurst: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 8000)]
        rate: u32,
    },
    /// 2D field (2D-DFA alpha targets H), written as 8-bit PGM
    Field2d {
        #[arg(long)]
        hurst: f64,
        #[arg(long)]
        seed: u64,
        /// side length; the output is len x len
        #[arg(long)]
        len: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err(format!("expected LO:HI, got {s:?}"));
    }
    let lo = parts[0].parse().map_err(|e| format!("{e}"))?;
    let hi = parts[1].parse().map_err(|e| format!("{e}"))?;
    Ok((lo, hi))
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected MIN:MAX:N, got {s:?}"));
    }
    Ok((
        parts[0].parse().map_err(|e| format!("{e}"))?,
        parts[1].parse().map_err(|e| format!("{e}"))?,
        parts[2].parse().map_err(|e| format!("{e}"))?,
    ))
}

fn is_image_path(p: &Path) -> bool {
    matches!(
        p.extension().and_then(|e| e.to_str()).map(|e| e.to_ascii_lowercase()).as_deref(),
        Some("pgm") | Some("ppm") | Some("pnm")
    )
}

fn load_audio(path: &Path) -> crossfrac::Result<TimeSeries> {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("wav") => load_wav(path),
        _ => load_series_csv(path),
    }
}

fn default_grid_for_series(x: &TimeSeries) -> crossfrac::Result<ScaleGrid> {
    make_scale_grid(x.len(), crossfrac::kernel::DEFAULT_N_SCALES)
}

fn select_channel(img: &RgbImage, channel: Channel) -> Plane {
    match channel {
        Channel::R => img.red.clone(),
        Channel::G => img.green.clone(),
        Channel::B => img.blue.clone(),
        Channel::Gray => to_grayscale(img),
    }
}

fn peak_normalize(series: &TimeSeries) -> TimeSeries {
    let peak = series.samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = if peak > 0.0 { 0.999 / peak } else { 1.0 };
    TimeSeries {
        samples: series.samples.iter().map(|v| v * scale).collect(),
        sample_rate_hz: series.sample_rate_hz,
        source_id: series.source_id.clone(),
    }
}

fn plane_to_gray_levels(p: &Plane) -> Plane {
    let (lo, hi) = p
        .values()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let span = if hi > lo { hi - lo } else { 1.0 };
    p.map(|v| ((v - lo) / span * 255.0).round())
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            manifest,
            out,
            format,
            scales,
            fit_range,
        } => {
            let mut m = match pipeline::load_manifest(&manifest) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(2);
                }
            };
            if let Some(s) = scales {
                let (lo, hi, n) = parse_triple(&s)?;
                m.config.scale_range = Some((lo, hi));
                m.config.n_scales = n;
            }
            if let Some(s) = fit_range {
                m.config.fit_range = Some(parse_pair(&s)?);
            }
            let base_dir = manifest
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from("."));
            let report = match pipeline::run_batch(&m, &base_dir) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(2);
                }
            };
            let fmt = match format {
                Format::Json => ReportFormat::Json,
                Format::Csv => ReportFormat::Csv,
                Format::Both => ReportFormat::Both,
            };
            let written = pipeline::emit_report(&report, &out, fmt).map_err(|e| e.to_string())?;
            for p in written {
                println!("wrote {}", p.display());
            }
            if pipeline::all_failed(&report) {
                eprintln!("error: no stimulus produced a usable exponent");
                return Ok(3);
            }
            Ok(0)
        }
        Command::Dfa1d { input } => {
            let series = load_audio(&input).map_err(|e| e.to_string())?;
            let grid = default_grid_for_series(&series).map_err(|e| e.to_string())?;
            let result = dfa_1d(&series, &grid, None).map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&result).map_err(|e| e.to_string())?
            );
            Ok(0)
        }
        Command::Dfa2d { input, channel } => {
            let img = load_image(&input).map_err(|e| e.to_string())?;
            let plane = select_channel(&img, channel);
            let grid = make_scale_grid(
                plane.width().min(plane.height()),
                crossfrac::kernel::DEFAULT_N_SCALES,
            )
            .map_err(|e| e.to_string())?;
            let result = dfa_2d(&plane, &grid, None).map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&result).map_err(|e| e.to_string())?
            );
            Ok(0)
        }
        Command::Dcca { file_a, file_b } => {
            match (is_image_path(&file_a), is_image_path(&file_b)) {
                (false, false) => {
                    let x = load_audio(&file_a).map_err(|e| e.to_string())?;
                    let y = load_audio(&file_b).map_err(|e| e.to_string())?;
                    let n = x.len().min(y.len());
                    let grid = make_scale_grid(n, crossfrac::kernel::DEFAULT_N_SCALES)
                        .map_err(|e| e.to_string())?;
                    let trim = |t: &TimeSeries| TimeSeries {
                        samples: t.samples[..n].to_vec(),
                        sample_rate_hz: t.sample_rate_hz,
                        source_id: t.source_id.clone(),
                    };
                    let result = dcca_1d(&trim(&x), &trim(&y), &grid, None)
                        .map_err(|e| e.to_string())?;
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&result).map_err(|e| e.to_string())?
                    );
                }
                (true, true) => {
                    let a = load_image(&file_a).map_err(|e| e.to_string())?;
                    let b = load_image(&file_b).map_err(|e| e.to_string())?;
                    let h = a.height().min(b.height());
                    let w = a.width().min(b.width());
                    let crop = |img: &RgbImage| {
                        RgbImage::new(
                            img.red.crop(h, w),
                            img.green.crop(h, w),
                            img.blue.crop(h, w),
                        )
                        .expect("crop preserves matching dimensions")
                    };
                    let grid = make_scale_grid(h.min(w), crossfrac::kernel::DEFAULT_N_SCALES)
                        .map_err(|e| e.to_string())?;
                    let pair = image_pair_coefficient(&crop(&a), &crop(&b), &grid, None);
                    let summary = serde_json::json!({
                        "red": pair.red.as_ref().map_err(|e| e.to_string()).map(|r| r.gamma_x).ok(),
                        "green": pair.green.as_ref().map_err(|e| e.to_string()).map(|r| r.gamma_x).ok(),
                        "blue": pair.blue.as_ref().map_err(|e| e.to_string()).map(|r| r.gamma_x).ok(),
                        "mean_gamma_x": pair.mean_gamma_x(),
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&summary).map_err(|e| e.to_string())?
                    );
                }
                _ => return Err("dcca requires two files of the same modality".into()),
            }
            Ok(0)
        }
        Command::Synth { generator } => {
            match generator {
                Generator::Noise1d {
                    seed,
                    len,
                    out,
                    rate,
                } => {
                    let mut series =
                        synth::gen_white_noise_1d(len, Seed(seed)).map_err(|e| e.to_string())?;
                    series.sample_rate_hz = rate;
                    write_wav(&out, &peak_normalize(&series)).map_err(|e| e.to_string())?;
                    println!("wrote {}", out.display());
                }
                Generator::Fgn1d {
                    hurst,
                    seed,
                    len,
                    out,
                    rate,
                } => {
                    let mut series =
                        synth::gen_fgn_1d(len, hurst, Seed(seed)).map_err(|e| e.to_string())?;
                    series.sample_rate_hz = rate;
                    write_wav(&out, &peak_normalize(&series)).map_err(|e| e.to_string())?;
                    println!("wrote {}", out.display());
                }
                Generator::Field2d {
                    hurst,
                    seed,
                    len,
                    out,
                } => {
                    let plane =
                        synth::gen_field_2d(len, hurst, Seed(seed)).map_err(|e| e.to_string())?;
                    write_pgm(&out, &plane_to_gray_levels(&plane)).map_err(|e| e.to_string())?;
                    println!("wrote {}", out.display());
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

//! Batch driver: ingest a stimulus manifest, compute every per-stimulus DFA
//! exponent and every same-modality DCCA pair, classify valence, compute the
//! cross-modal Pearson block, and emit JSON/CSV reports.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dcca::{dcca_1d, image_pair_coefficient, CrossResult};
use crate::dfa::{channel_exponents, dfa_1d, ScalingResult};
use crate::error::{Error, Result};
use crate::io::netpbm::load_image;
use crate::io::series_csv::load_series_csv;
use crate::io::wav::load_wav;
use crate::kernel::{make_scale_grid, ScaleGrid, DEFAULT_N_SCALES};
use crate::types::{Modality, RgbImage, StimulusRecord, TimeSeries, Valence};

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Threshold rule: averaged scaling exponent strictly above 1.5 -> SAD.
pub const SAD_THRESHOLD: f64 = 1.5;

pub fn classify_valence(alpha_mean: f64) -> Valence {
    if alpha_mean > SAD_THRESHOLD {
        Valence::Sad
    } else {
        Valence::Happy
    }
}

/// Standard sample Pearson correlation coefficient.
pub fn pearson(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::VectorLengthMismatch {
            a: u.len(),
            b: v.len(),
        });
    }
    if u.len() < 2 {
        return Err(Error::GroupTooSmall(format!(
            "need at least 2 paired values, got {}",
            u.len()
        )));
    }
    let n = u.len() as f64;
    let mu = u.iter().sum::<f64>() / n;
    let mv = v.iter().sum::<f64>() / n;
    let mut suu = 0.0;
    let mut svv = 0.0;
    let mut suv = 0.0;
    for (&a, &b) in u.iter().zip(v) {
        let da = a - mu;
        let db = b - mv;
        suu += da * da;
        svv += db * db;
        suv += da * db;
    }
    if suu == 0.0 || svv == 0.0 {
        return Err(Error::DegenerateVector);
    }
    Ok((suv / (suu * svv).sqrt()).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisConfig {
    #[serde(default = "default_n_scales")]
    pub n_scales: usize,
    /// Explicit (s_min, s_max) override; None derives s_max from each input.
    #[serde(default)]
    pub scale_range: Option<(usize, usize)>,
    /// Inclusive [lo, hi] scale interval for the log-log fit; None = full grid.
    #[serde(default)]
    pub fit_range: Option<(usize, usize)>,
}

fn default_n_scales() -> usize {
    DEFAULT_N_SCALES
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            n_scales: DEFAULT_N_SCALES,
            scale_range: None,
            fit_range: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    #[serde(default)]
    pub config: AnalysisConfig,
    pub stimuli: Vec<StimulusRecord>,
}

impl Manifest {
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != MANIFEST_SCHEMA_VERSION {
            return Err(Error::ManifestError(format!(
                "unsupported schema_version {}",
                self.schema_version
            )));
        }
        if self.stimuli.is_empty() {
            return Err(Error::ManifestError("no stimuli listed".into()));
        }
        let mut seen = BTreeSet::new();
        for s in &self.stimuli {
            if !seen.insert(&s.id) {
                return Err(Error::ManifestError(format!("duplicate id {:?}", s.id)));
            }
        }
        Ok(())
    }
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<Manifest> {
    let text = fs::read_to_string(&path)
        .map_err(|e| Error::ManifestError(format!("{}: {e}", path.as_ref().display())))?;
    let manifest: Manifest =
        serde_json::from_str(&text).map_err(|e| Error::ManifestError(e.to_string()))?;
    manifest.validate()?;
    Ok(manifest)
}

// ---------------------------------------------------------------------------
// report shapes

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ChannelOutcome {
    Ok { result: ScalingResult },
    Failed { error: String },
}

impl ChannelOutcome {
    fn from(res: Result<ScalingResult>) -> Self {
        match res {
            Ok(result) => ChannelOutcome::Ok { result },
            Err(e) => ChannelOutcome::Failed {
                error: e.to_string(),
            },
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match self {
            ChannelOutcome::Ok { result } => Some(result.exponent),
            ChannelOutcome::Failed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StimulusOutcome {
    Audio {
        result: ScalingResult,
        classification: Valence,
    },
    Image {
        red: ChannelOutcome,
        green: ChannelOutcome,
        blue: ChannelOutcome,
        alpha_mean: Option<f64>,
        classification: Option<Valence>,
        width: usize,
        height: usize,
    },
    Failed {
        error: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StimulusReport {
    pub id: String,
    pub modality: Modality,
    pub path: String,
    pub target: Valence,
    pub ratings: std::collections::BTreeMap<String, f64>,
    pub outcome: StimulusOutcome,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum AudioPairOutcome {
    Ok {
        lambda: f64,
        gamma_x: f64,
        r_squared: f64,
        sign_consistent: bool,
        curve: crate::curve::FluctuationCurve,
    },
    Failed {
        error: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AudioPairEntry {
    pub id_a: String,
    pub id_b: String,
    pub outcome: AudioPairOutcome,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ImageChannelPairOutcome {
    Ok {
        lambda: f64,
        gamma_x: f64,
        r_squared: f64,
        sign_consistent: bool,
    },
    Failed {
        error: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImagePairEntry {
    pub id_a: String,
    pub id_b: String,
    pub red: ImageChannelPairOutcome,
    pub green: ImageChannelPairOutcome,
    pub blue: ImageChannelPairOutcome,
    /// Arithmetic mean of the three channel gamma_x values.
    pub mean_gamma_x: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum PearsonCell {
    Ok { value: f64 },
    Failed { error: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossModalBlock {
    /// Within-group pairing order: ascending stimulus id.
    pub happy_audio_ids: Vec<String>,
    pub sad_audio_ids: Vec<String>,
    pub happy_image_ids: Vec<String>,
    pub sad_image_ids: Vec<String>,
    pub happy_audio_vs_happy_image: PearsonCell,
    pub happy_audio_vs_sad_image: PearsonCell,
    pub sad_audio_vs_happy_image: PearsonCell,
    pub sad_audio_vs_sad_image: PearsonCell,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: AnalysisConfig,
    pub stimuli: Vec<StimulusReport>,
    /// Upper triangle including the diagonal, in manifest order.
    pub audio_pairs: Vec<AudioPairEntry>,
    pub image_pairs: Vec<ImagePairEntry>,
    pub cross_modal: CrossModalBlock,
}

// ---------------------------------------------------------------------------
// batch execution

enum LoadedStimulus {
    Audio(TimeSeries),
    Image(RgbImage),
}

fn load_stimulus(record: &StimulusRecord, base_dir: &Path) -> Result<LoadedStimulus> {
    let path = if record.path.is_absolute() {
        record.path.clone()
    } else {
        base_dir.join(&record.path)
    };
    match record.modality {
        Modality::Audio => {
            let ext = path
                .extension()
                .and_then(|e| e.to_str())
                .unwrap_or("")
                .to_ascii_lowercase();
            let series = if ext == "wav" {
                load_wav(&path)?
            } else {
                load_series_csv(&path)?
            };
            Ok(LoadedStimulus::Audio(series))
        }
        Modality::Image => Ok(LoadedStimulus::Image(load_image(&path)?)),
    }
}

fn grid_for_length(len: usize, config: &AnalysisConfig) -> Result<ScaleGrid> {
    match config.scale_range {
        Some((lo, hi)) => ScaleGrid::geometric(lo, hi.min(len / 4), config.n_scales),
        None => make_scale_grid(len, config.n_scales),
    }
}

fn cross_result_to_audio_outcome(res: Result<CrossResult>) -> AudioPairOutcome {
    match res {
        Ok(r) => AudioPairOutcome::Ok {
            lambda: r.lambda,
            gamma_x: r.gamma_x,
            r_squared: r.fit.r_squared,
            sign_consistent: r.sign_consistent,
            curve: r.curve,
        },
        Err(e) => AudioPairOutcome::Failed {
            error: e.to_string(),
        },
    }
}

fn cross_result_to_channel_outcome(res: &Result<CrossResult>) -> ImageChannelPairOutcome {
    match res {
        Ok(r) => ImageChannelPairOutcome::Ok {
            lambda: r.lambda,
            gamma_x: r.gamma_x,
            r_squared: r.fit.r_squared,
            sign_consistent: r.sign_consistent,
        },
        Err(e) => ImageChannelPairOutcome::Failed {
            error: e.to_string(),
        },
    }
}

/// Run the full study over a manifest. Per-stimulus failures are embedded in
/// the report; only an invalid manifest is fatal.
pub fn run_batch(manifest: &Manifest, base_dir: &Path) -> Result<Report> {
    manifest.validate()?;
    let config = &manifest.config;

    let mut stimuli_reports = Vec::with_capacity(manifest.stimuli.len());
    // loaded inputs retained for pairwise analysis, keyed by manifest index
    let mut audio_inputs: Vec<(String, TimeSeries)> = Vec::new();
    let mut image_inputs: Vec<(String, RgbImage)> = Vec::new();
    // (id, target, mean alpha) for the cross-modal block
    let mut audio_alphas: Vec<(String, Valence, f64)> = Vec::new();
    let mut image_alphas: Vec<(String, Valence, f64)> = Vec::new();

    for record in &manifest.stimuli {
        let outcome = match load_stimulus(record, base_dir) {
            Err(e) => StimulusOutcome::Failed {
                error: e.to_string(),
            },
            Ok(LoadedStimulus::Audio(series)) => {
                let res = grid_for_length(series.len(), config)
                    .and_then(|grid| dfa_1d(&series, &grid, config.fit_range));
                match res {
                    Ok(result) => {
                        audio_alphas.push((record.id.clone(), record.target, result.exponent));
                        audio_inputs.push((record.id.clone(), series));
                        StimulusOutcome::Audio {
                            classification: classify_valence(result.exponent),
                            result,
                        }
                    }
                    Err(e) => StimulusOutcome::Failed {
                        error: e.to_string(),
                    },
                }
            }
            Ok(LoadedStimulus::Image(img)) => {
                let min_dim = img.width().min(img.height());
                match grid_for_length(min_dim, config) {
                    Err(e) => StimulusOutcome::Failed {
                        error: e.to_string(),
                    },
                    Ok(grid) => {
                        let ce = channel_exponents(&img, &grid, config.fit_range);
                        let alpha_mean = ce.mean_alpha();
                        if let Some(mean) = alpha_mean {
                            image_alphas.push((record.id.clone(), record.target, mean));
                        }
                        let outcome = StimulusOutcome::Image {
                            red: ChannelOutcome::from(ce.red),
                            green: ChannelOutcome::from(ce.green),
                            blue: ChannelOutcome::from(ce.blue),
                            alpha_mean,
                            classification: alpha_mean.map(classify_valence),
                            width: img.width(),
                            height: img.height(),
                        };
                        image_inputs.push((record.id.clone(), img));
                        outcome
                    }
                }
            }
        };
        stimuli_reports.push(StimulusReport {
            id: record.id.clone(),
            modality: record.modality,
            path: record.path.display().to_string(),
            target: record.target,
            ratings: record.ratings.clone(),
            outcome,
        });
    }

    // audio x audio pairs (upper triangle with diagonal); unequal lengths are
    // truncated to the common prefix before DCCA
    let mut audio_pairs = Vec::new();
    for i in 0..audio_inputs.len() {
        for j in i..audio_inputs.len() {
            let (ref id_a, ref xa) = audio_inputs[i];
            let (ref id_b, ref xb) = audio_inputs[j];
            let n = xa.len().min(xb.len());
            let res = grid_for_length(n, config).and_then(|grid| {
                if xa.len() == xb.len() {
                    dcca_1d(xa, xb, &grid, config.fit_range)
                } else {
                    let ta = TimeSeries::new(
                        xa.samples[..n].to_vec(),
                        xa.sample_rate_hz,
                        xa.source_id.clone(),
                    )?;
                    let tb = TimeSeries::new(
                        xb.samples[..n].to_vec(),
                        xb.sample_rate_hz,
                        xb.source_id.clone(),
                    )?;
                    dcca_1d(&ta, &tb, &grid, config.fit_range)
                }
            });
            audio_pairs.push(AudioPairEntry {
                id_a: id_a.clone(),
                id_b: id_b.clone(),
                outcome: cross_result_to_audio_outcome(res),
            });
        }
    }

    // image x image pairs; mismatched dimensions are cropped top-left
    let mut image_pairs = Vec::new();
    for i in 0..image_inputs.len() {
        for j in i..image_inputs.len() {
            let (ref id_a, ref ia) = image_inputs[i];
            let (ref id_b, ref ib) = image_inputs[j];
            let h = ia.height().min(ib.height());
            let w = ia.width().min(ib.width());
            let entry = match grid_for_length(h.min(w), config) {
                Err(e) => {
                    let failed = || ImageChannelPairOutcome::Failed {
                        error: e.to_string(),
                    };
                    ImagePairEntry {
                        id_a: id_a.clone(),
                        id_b: id_b.clone(),
                        red: failed(),
                        green: failed(),
                        blue: failed(),
                        mean_gamma_x: None,
                    }
                }
                Ok(grid) => {
                    let (ca, cb);
                    let (pa, pb) = if ia.height() == ib.height() && ia.width() == ib.width() {
                        (ia, ib)
                    } else {
                        ca = RgbImage::new(
                            ia.red.crop(h, w),
                            ia.green.crop(h, w),
                            ia.blue.crop(h, w),
                        )?;
                        cb = RgbImage::new(
                            ib.red.crop(h, w),
                            ib.green.crop(h, w),
                            ib.blue.crop(h, w),
                        )?;
                        (&ca, &cb)
                    };
                    let pair = image_pair_coefficient(pa, pb, &grid, config.fit_range);
                    ImagePairEntry {
                        id_a: id_a.clone(),
                        id_b: id_b.clone(),
                        red: cross_result_to_channel_outcome(&pair.red),
                        green: cross_result_to_channel_outcome(&pair.green),
                        blue: cross_result_to_channel_outcome(&pair.blue),
                        mean_gamma_x: pair.mean_gamma_x(),
                    }
                }
            };
            image_pairs.push(entry);
        }
    }

    let cross_modal = cross_modal_block(&audio_alphas, &image_alphas);

    Ok(Report {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        stimuli: stimuli_reports,
        audio_pairs,
        image_pairs,
        cross_modal,
    })
}

fn group(alphas: &[(String, Valence, f64)], valence: Valence) -> (Vec<String>, Vec<f64>) {
    let mut members: Vec<(&String, f64)> = alphas
        .iter()
        .filter(|(_, v, _)| *v == valence)
        .map(|(id, _, a)| (id, *a))
        .collect();
    members.sort_by(|a, b| a.0.cmp(b.0));
    (
        members.iter().map(|(id, _)| (*id).clone()).collect(),
        members.iter().map(|(_, a)| *a).collect(),
    )
}

fn pearson_cell(u: &[f64], v: &[f64]) -> PearsonCell {
    if u.len() < 2 || v.len() < 2 {
        return PearsonCell::Failed {
            error: Error::GroupTooSmall(format!(
                "group sizes {} and {}; need at least 2",
                u.len(),
                v.len()
            ))
            .to_string(),
        };
    }
    // pair by within-group sorted order; surplus entries are dropped
    let n = u.len().min(v.len());
    match pearson(&u[..n], &v[..n]) {
        Ok(value) => PearsonCell::Ok { value },
        Err(e) => PearsonCell::Failed {
            error: e.to_string(),
        },
    }
}

/// Four Pearson coefficients between valence groups across modalities, with
/// vectors paired by ascending stimulus id within each group.
pub fn cross_modal_block(
    audio_alphas: &[(String, Valence, f64)],
    image_alphas: &[(String, Valence, f64)],
) -> CrossModalBlock {
    let (ha_ids, ha) = group(audio_alphas, Valence::Happy);
    let (sa_ids, sa) = group(audio_alphas, Valence::Sad);
    let (hi_ids, hi) = group(image_alphas, Valence::Happy);
    let (si_ids, si) = group(image_alphas, Valence::Sad);
    CrossModalBlock {
        happy_audio_vs_happy_image: pearson_cell(&ha, &hi),
        happy_audio_vs_sad_image: pearson_cell(&ha, &si),
        sad_audio_vs_happy_image: pearson_cell(&sa, &hi),
        sad_audio_vs_sad_image: pearson_cell(&sa, &si),
        happy_audio_ids: ha_ids,
        sad_audio_ids: sa_ids,
        happy_image_ids: hi_ids,
        sad_image_ids: si_ids,
    }
}

/// True when no stimulus produced a usable exponent.
pub fn all_failed(report: &Report) -> bool {
    report.stimuli.iter().all(|s| {
        matches!(
            s.outcome,
            StimulusOutcome::Failed { .. }
                | StimulusOutcome::Image {
                    alpha_mean: None,
                    ..
                }
        )
    })
}

// ---------------------------------------------------------------------------
// emission

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Both,
}

pub fn emit_report(report: &Report, out_dir: &Path, format: ReportFormat) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    if matches!(format, ReportFormat::Json | ReportFormat::Both) {
        let path = out_dir.join("report.json");
        let mut text = serde_json::to_string_pretty(report)?;
        text.push('\n');
        fs::write(&path, text)?;
        written.push(path);
    }
    if matches!(format, ReportFormat::Csv | ReportFormat::Both) {
        written.extend(emit_csv_tables(report, out_dir)?);
    }
    Ok(written)
}

fn sign_str(s: crate::curve::Sign) -> &'static str {
    match s {
        crate::curve::Sign::Plus => "+",
        crate::curve::Sign::Minus => "-",
        crate::curve::Sign::Zero => "0",
    }
}

fn emit_csv_tables(report: &Report, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();

    let exp_path = out_dir.join("exponents.csv");
    {
        let mut w = csv::Writer::from_path(&exp_path)?;
        w.write_record([
            "id",
            "modality",
            "target",
            "alpha",
            "alpha_red",
            "alpha_green",
            "alpha_blue",
            "alpha_mean",
            "classification",
            "error",
        ])?;
        for s in &report.stimuli {
            let valence = |v: &Valence| format!("{v:?}").to_lowercase();
            let opt = |o: Option<f64>| o.map(|v| v.to_string()).unwrap_or_default();
            match &s.outcome {
                StimulusOutcome::Audio {
                    result,
                    classification,
                } => w.write_record([
                    s.id.as_str(),
                    "audio",
                    &valence(&s.target),
                    &result.exponent.to_string(),
                    "",
                    "",
                    "",
                    &result.exponent.to_string(),
                    &valence(classification),
                    "",
                ])?,
                StimulusOutcome::Image {
                    red,
                    green,
                    blue,
                    alpha_mean,
                    classification,
                    ..
                } => w.write_record([
                    s.id.as_str(),
                    "image",
                    &valence(&s.target),
                    "",
                    &opt(red.alpha()),
                    &opt(green.alpha()),
                    &opt(blue.alpha()),
                    &opt(*alpha_mean),
                    &classification.as_ref().map(&valence).unwrap_or_default(),
                    "",
                ])?,
                StimulusOutcome::Failed { error } => w.write_record([
                    s.id.as_str(),
                    &format!("{:?}", s.modality).to_lowercase(),
                    &valence(&s.target),
                    "",
                    "",
                    "",
                    "",
                    "",
                    "",
                    error.as_str(),
                ])?,
            }
        }
        w.flush()?;
    }
    written.push(exp_path);

    let audio_path = out_dir.join("audio_pairs.csv");
    {
        let mut w = csv::Writer::from_path(&audio_path)?;
        w.write_record([
            "id_a",
            "id_b",
            "lambda",
            "gamma_x",
            "r_squared",
            "sign_consistent",
            "error",
        ])?;
        for p in &report.audio_pairs {
            match &p.outcome {
                AudioPairOutcome::Ok {
                    lambda,
                    gamma_x,
                    r_squared,
                    sign_consistent,
                    ..
                } => w.write_record([
                    p.id_a.as_str(),
                    p.id_b.as_str(),
                    &lambda.to_string(),
                    &gamma_x.to_string(),
                    &r_squared.to_string(),
                    &sign_consistent.to_string(),
                    "",
                ])?,
                AudioPairOutcome::Failed { error } => w.write_record([
                    p.id_a.as_str(),
                    p.id_b.as_str(),
                    "",
                    "",
                    "",
                    "",
                    error.as_str(),
                ])?,
            }
        }
        w.flush()?;
    }
    written.push(audio_path);

    let image_path = out_dir.join("image_pairs.csv");
    {
        let mut w = csv::Writer::from_path(&image_path)?;
        w.write_record([
            "id_a",
            "id_b",
            "channel",
            "lambda",
            "gamma_x",
            "r_squared",
            "sign_consistent",
            "mean_gamma_x",
            "error",
        ])?;
        for p in &report.image_pairs {
            for (name, ch) in [("red", &p.red), ("green", &p.green), ("blue", &p.blue)] {
                let mean = p.mean_gamma_x.map(|v| v.to_string()).unwrap_or_default();
                match ch {
                    ImageChannelPairOutcome::Ok {
                        lambda,
                        gamma_x,
                        r_squared,
                        sign_consistent,
                    } => w.write_record([
                        p.id_a.as_str(),
                        p.id_b.as_str(),
                        name,
                        &lambda.to_string(),
                        &gamma_x.to_string(),
                        &r_squared.to_string(),
                        &sign_consistent.to_string(),
                        &mean,
                        "",
                    ])?,
                    ImageChannelPairOutcome::Failed { error } => w.write_record([
                        p.id_a.as_str(),
                        p.id_b.as_str(),
                        name,
                        "",
                        "",
                        "",
                        "",
                        &mean,
                        error.as_str(),
                    ])?,
                }
            }
        }
        w.flush()?;
    }
    written.push(image_path);

    let pearson_path = out_dir.join("pearson.csv");
    {
        let mut w = csv::Writer::from_path(&pearson_path)?;
        w.write_record(["audio_group", "image_group", "pearson", "error"])?;
        let cells = [
            ("happy", "happy", &report.cross_modal.happy_audio_vs_happy_image),
            ("happy", "sad", &report.cross_modal.happy_audio_vs_sad_image),
            ("sad", "happy", &report.cross_modal.sad_audio_vs_happy_image),
            ("sad", "sad", &report.cross_modal.sad_audio_vs_sad_image),
        ];
        for (a, i, cell) in cells {
            match cell {
                PearsonCell::Ok { value } => {
                    w.write_record([a, i, &value.to_string(), ""])?;
                }
                PearsonCell::Failed { error } => {
                    w.write_record([a, i, "", error.as_str()])?;
                }
            }
        }
        w.flush()?;
    }
    written.push(pearson_path);

    // full fluctuation curves for external figure-style plotting
    let curves_path = out_dir.join("curves.csv");
    {
        let mut w = csv::Writer::from_path(&curves_path)?;
        w.write_record(["stimulus_id", "channel", "scale", "f", "sign"])?;
        for s in &report.stimuli {
            match &s.outcome {
                StimulusOutcome::Audio { result, .. } => {
                    for p in &result.curve.points {
                        w.write_record([
                            s.id.as_str(),
                            "",
                            &p.scale.to_string(),
                            &p.f.to_string(),
                            sign_str(p.sign),
                        ])?;
                    }
                }
                StimulusOutcome::Image {
                    red, green, blue, ..
                } => {
                    for (name, ch) in [("red", red), ("green", green), ("blue", blue)] {
                        if let ChannelOutcome::Ok { result } = ch {
                            for p in &result.curve.points {
                                w.write_record([
                                    s.id.as_str(),
                                    name,
                                    &p.scale.to_string(),
                                    &p.f.to_string(),
                                    sign_str(p.sign),
                                ])?;
                            }
                        }
                    }
                }
                StimulusOutcome::Failed { .. } => {}
            }
        }
        w.flush()?;
    }
    written.push(curves_path);

    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_boundaries() {
        assert_eq!(classify_valence(1.6), Valence::Sad);
        assert_eq!(classify_valence(1.5), Valence::Happy);
        assert_eq!(classify_valence(1.4), Valence::Happy);
        assert_eq!(classify_valence(0.5), Valence::Happy);
    }

    #[test]
    fn pearson_perfect_linear() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn pearson_hand_computed() {
        // closed form: 3 / sqrt(2 * 14/3) = 0.981981...
        let r = pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0, 4.0]).unwrap();
        assert!((r - 0.981981).abs() < 1e-5);
    }

    #[test]
    fn pearson_degenerate_and_mismatch() {
        assert!(matches!(
            pearson(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]),
            Err(Error::DegenerateVector)
        ));
        assert!(matches!(
            pearson(&[1.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(Error::VectorLengthMismatch { .. })
        ));
    }

    #[test]
    fn cross_modal_identical_vectors() {
        let audio = vec![
            ("a1".into(), Valence::Happy, 0.5),
            ("a2".into(), Valence::Happy, 0.7),
            ("a3".into(), Valence::Sad, 1.6),
            ("a4".into(), Valence::Sad, 1.8),
        ];
        let image = vec![
            ("i1".into(), Valence::Happy, 0.5),
            ("i2".into(), Valence::Happy, 0.7),
            ("i3".into(), Valence::Sad, 1.6),
            ("i4".into(), Valence::Sad, 1.8),
        ];
        let block = cross_modal_block(&audio, &image);
        for cell in [
            &block.happy_audio_vs_happy_image,
            &block.happy_audio_vs_sad_image,
            &block.sad_audio_vs_happy_image,
            &block.sad_audio_vs_sad_image,
        ] {
            match cell {
                PearsonCell::Ok { value } => assert!((value - 1.0).abs() < 1e-12),
                PearsonCell::Failed { error } => panic!("unexpected failure: {error}"),
            }
        }
        assert_eq!(block.happy_audio_ids, vec!["a1", "a2"]);
    }

    #[test]
    fn cross_modal_constant_group_fails_its_cells() {
        let audio = vec![
            ("a1".into(), Valence::Happy, 1.0),
            ("a2".into(), Valence::Happy, 1.0),
        ];
        let image = vec![
            ("i1".into(), Valence::Happy, 0.5),
            ("i2".into(), Valence::Happy, 0.7),
        ];
        let block = cross_modal_block(&audio, &image);
        assert!(matches!(
            block.happy_audio_vs_happy_image,
            PearsonCell::Failed { .. }
        ));
    }

    #[test]
    fn cross_modal_small_group() {
        let audio = vec![("a1".into(), Valence::Happy, 1.0)];
        let image = vec![
            ("i1".into(), Valence::Happy, 0.5),
            ("i2".into(), Valence::Happy, 0.7),
        ];
        let block = cross_modal_block(&audio, &image);
        assert!(matches!(
            block.happy_audio_vs_happy_image,
            PearsonCell::Failed { .. }
        ));
    }

    #[test]
    fn empty_manifest_rejected() {
        let m = Manifest {
            schema_version: MANIFEST_SCHEMA_VERSION,
            config: AnalysisConfig::default(),
            stimuli: vec![],
        };
        assert!(matches!(m.validate(), Err(Error::ManifestError(_))));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let rec = |id: &str| StimulusRecord {
            id: id.into(),
            modality: Modality::Audio,
            path: "x.wav".into(),
            target: Valence::Unknown,
            ratings: Default::default(),
        };
        let m = Manifest {
            schema_version: MANIFEST_SCHEMA_VERSION,
            config: AnalysisConfig::default(),
            stimuli: vec![rec("a"), rec("a")],
        };
        assert!(matches!(m.validate(), Err(Error::ManifestError(_))));
    }
}

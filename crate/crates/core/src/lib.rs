//! Fractal scaling analysis of audio and image stimuli: 1D/2D detrended
//! fluctuation analysis (DFA), 1D/2D detrended cross-correlation analysis
//! (DCCA), seedable synthetic generators with known exponents, and a batch
//! pipeline that classifies stimulus valence from the fitted exponents.

pub mod curve;
pub mod dcca;
pub mod dfa;
pub mod error;
pub mod io;
pub mod kernel;
pub mod pipeline;
pub mod synth;
pub mod types;

pub use curve::{CurveKind, CurvePoint, FluctuationCurve, Sign};
pub use dcca::{
    cross_fluctuation_1d, cross_fluctuation_2d, dcca_1d, dcca_2d, gamma_from_lambda,
    image_pair_coefficient, CrossResult, ImagePairResult,
};
pub use dfa::{
    channel_exponents, dfa_1d, dfa_2d, fluctuation_1d, fluctuation_2d, ChannelExponents,
    ScalingResult,
};
pub use error::{Error, Result};
pub use kernel::{
    fit_line, fit_plane, loglog_fit, make_scale_grid, profile_1d, profile_2d, LogLogFit, PlaneFit,
    Profile1D, Profile2D, ScaleGrid,
};
pub use pipeline::{
    classify_valence, cross_modal_block, emit_report, load_manifest, pearson, run_batch,
    AnalysisConfig, Manifest, Report, ReportFormat,
};
pub use synth::{gen_fgn_1d, gen_field_2d, gen_white_noise_1d, Seed};
pub use types::{
    to_grayscale, ChannelTag, Modality, Plane, RgbImage, StimulusRecord, TimeSeries, Valence,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    // audio ingestion
    #[error("not a RIFF/WAVE file")]
    NotWav,
    #[error("unsupported WAV encoding: {0}")]
    UnsupportedEncoding(String),
    #[error("truncated WAV file")]
    TruncatedFile,

    // image ingestion
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
    #[error("malformed netpbm header: {0}")]
    MalformedHeader(String),
    #[error("pixel data ends before declared width*height")]
    TruncatedPixelData,

    // numeric series ingestion
    #[error("parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },

    // scale grid / fitting
    #[error("input too small: min dimension {min_dim} gives s_max < 5")]
    InputTooSmall { min_dim: usize },
    #[error("too few scales for a power-law fit: {available} < {required}")]
    TooFewScales { available: usize, required: usize },
    #[error("regressor is constant; line fit is underdetermined")]
    DegenerateRegressor,
    #[error("fluctuation value F({scale}) is not positive; cannot take log")]
    NonPositiveFluctuation { scale: usize },

    // DFA / DCCA
    #[error("degenerate input: detrended fluctuations vanish at every scale")]
    DegenerateInput,
    #[error("series too short: length {length} < {required}")]
    SeriesTooShort { length: usize, required: usize },
    #[error("series lengths differ: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("plane dimensions differ: {a_h}x{a_w} vs {b_h}x{b_w}")]
    DimensionMismatch {
        a_h: usize,
        a_w: usize,
        b_h: usize,
        b_w: usize,
    },
    #[error("cross fluctuation is exactly zero at every scale")]
    AllZeroCrossFluctuation,

    // generators
    #[error("hurst exponent {0} outside open interval (0, 1)")]
    InvalidHurst(f64),
    #[error("invalid generator size {got}: {requirement}")]
    InvalidSize { got: usize, requirement: String },

    // pipeline
    #[error("vector has zero variance; Pearson correlation undefined")]
    DegenerateVector,
    #[error("vectors have different lengths: {a} vs {b}")]
    VectorLengthMismatch { a: usize, b: usize },
    #[error("valence group too small: {0}")]
    GroupTooSmall(String),
    #[error("manifest error: {0}")]
    ManifestError(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

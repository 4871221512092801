use thiserror::Error;

/// Errors produced by growth problems, their truncations and the analyses on top of them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed presentation: {0}")]
    Malformed(String),

    #[error("negative weight {0}")]
    NegativeWeight(String),

    #[error("unit index {index} out of range for {size} vertices")]
    MissingUnit { index: usize, size: usize },

    #[error("invalid vertex key {key} for family {family}")]
    InvalidKey { key: String, family: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("expansion cap of {cap} vertices exceeded")]
    CapExceeded { cap: usize },

    #[error("filtration schedule is not nested at step {step}")]
    NonNestedSchedule { step: usize },

    #[error("filtration schedule must start at exactly the unit")]
    ScheduleMissingUnit,

    #[error("filtration schedule does not exhaust the {missing} remaining vertices of a finite problem")]
    ScheduleNotExhaustive { missing: usize },

    #[error("power iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("class {class} contains no cycle, period undefined")]
    AcyclicClass { class: usize },

    #[error("left/right eigenvectors cannot be normalized (w^T v = {0:e})")]
    Normalization(f64),

    #[error("matrix of size {size} exceeds the dense cap {cap}")]
    SizeOverCap { size: usize, cap: usize },

    #[error("eigenvector residual {residual:e} exceeds bound {bound:e}")]
    Residual { residual: f64, bound: f64 },

    #[error("series is identically zero: vertex lies on no cycle")]
    ZeroSeries,

    #[error("growth rate must be positive, got {0}")]
    NonPositiveRate(String),

    #[error("no final basic class detected: {0}")]
    NoFinalBasicClass(String),

    #[error("asymptotic coefficients did not stabilize within the schedule (last change {0:e})")]
    NotStabilized(f64),

    #[error("imaginary residue {residue:e} exceeds 1e-9 relative to {value:e}")]
    ImaginaryResidue { residue: f64, value: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "malformed",
            Error::NegativeWeight(_) => "negative_weight",
            Error::MissingUnit { .. } => "missing_unit",
            Error::InvalidKey { .. } => "invalid_key",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::NonNestedSchedule { .. } => "non_nested_schedule",
            Error::ScheduleMissingUnit => "schedule_missing_unit",
            Error::ScheduleNotExhaustive { .. } => "schedule_not_exhaustive",
            Error::NoConvergence { .. } => "no_convergence",
            Error::AcyclicClass { .. } => "acyclic_class",
            Error::Normalization(_) => "normalization",
            Error::SizeOverCap { .. } => "size_over_cap",
            Error::Residual { .. } => "residual",
            Error::ZeroSeries => "zero_series",
            Error::NonPositiveRate(_) => "non_positive_rate",
            Error::NoFinalBasicClass(_) => "no_final_basic_class",
            Error::NotStabilized(_) => "not_stabilized",
            Error::ImaginaryResidue { .. } => "imaginary_residue",
            Error::Parse(_) => "parse",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

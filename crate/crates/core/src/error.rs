use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported operator-basis dimension {0} (expected 2 or 4)")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid measurement plan: {0}")]
    InvalidPlan(String),

    #[error("sharpness {0} outside [0, 1]")]
    InvalidLambda(f64),

    #[error("unsharp count {n} outside 1..={max}")]
    InvalidUnsharpCount { n: usize, max: usize },

    #[error("non-positive distance between qubits {0} and {1}")]
    NonPositiveDistance(usize, usize),

    #[error("correction policy has no entry for outcome {0}")]
    MissingOutcome(usize),

    #[error("target operator is not unitary (max deviation {0:.3e})")]
    NonUnitaryTarget(f64),

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("general rotation requires four angles")]
    MissingAngles,

    #[error("channel has no Kraus operators")]
    EmptyChannel,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("region corner is not finite")]
    NonFiniteCorner,
    #[error("region min exceeds max on axis {axis}")]
    InvertedCorners { axis: usize },
    #[error("region has no divisible axis")]
    NoDivisibleAxis,
    #[error("axis {axis} cannot be halved")]
    Unsplittable { axis: usize },
    #[error("direction is not a unit vector (norm {norm})")]
    NotUnit { norm: f64 },
    #[error("field of view {0} degrees outside (0, 180)")]
    InvalidFov(f64),
    #[error("need at least one sampled direction, got {0}")]
    TooFewDirections(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("c must be positive, got {0}")]
    C(f64),
    #[error("nu1 must be positive, got {0}")]
    Nu1(f64),
    #[error("rho must lie in (0, 1], got {0}")]
    Rho(f64),
    #[error("horizon must be at least 1")]
    Horizon,
    #[error("n_dir must be at least 1")]
    NDir,
    #[error("depth limit formula is undefined for rho = 1")]
    DepthLimitUndefined,
    #[error("confidence clock must be at least 1, got {0}")]
    Clock(u64),
}

/// Failure reported by a [`Scorer`](crate::scorer::Scorer).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScoreError {
    #[error("empty pose batch")]
    EmptyBatch,
    #[error("scorer returned {got} scores for {expected} poses")]
    LengthMismatch { expected: usize, got: usize },
    #[error("score {value} at index {index} is outside [0, 1]")]
    OutOfRange { index: usize, value: f64 },
    #[error("position {0:?} outside the scene interval")]
    OutOfDomain([f64; 3]),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("transport: {0}")]
    Transport(String),
    #[error("remote rejected request (status {status})")]
    Remote { status: u8 },
}

#[derive(Debug, Error)]
pub enum ExploreError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Score(#[from] ScoreError),
    #[error(transparent)]
    Tree(crate::tree::TreeError),
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parsing {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid scene: {0}")]
    Scene(String),
    #[error("invalid bench config: {0}")]
    Bench(String),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

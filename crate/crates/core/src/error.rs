use thiserror::Error;

/// Everything that can go wrong while building, loading or certifying a code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("matrix is not realizable as a Gram matrix (minimum eigenvalue {min_eigenvalue:e})")]
    NotRealizable { min_eigenvalue: f64 },
    #[error("diagonal entry {index} is {value}, expected 1")]
    NotUnitDiagonal { index: usize, value: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range for {len} vectors")]
    InvalidIndex { index: usize, len: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("projection of vector {index} onto the complement is numerically zero")]
    ZeroProjection { index: usize },
    #[error("vectors do not form a clique: max deviation {max_deviation:e}")]
    NotAClique { max_deviation: f64 },
    #[error("Gram matrix of the clique is singular")]
    SingularGram,
    #[error("construction too large: {0}")]
    TooLarge(String),
    #[error("randomized construction failed after {attempts} attempts (max cross inner product {max_cross})")]
    RandomizedFailure { attempts: u32, max_cross: f64 },
    #[error("internal error: {0}")]
    InternalError(String),
    #[error("not an L-code: {violations} violating pairs")]
    NotAnLCode { violations: usize },
    #[error("graph too small: {0}")]
    TooSmall(String),
    #[error("no positive clique of size {t} found")]
    NoClique { t: usize },
    #[error("code is not equiangular")]
    NotEquiangular,
    #[error("wrong structure: {0}")]
    WrongStructure(String),
    #[error("angle 1/3 is excluded for this certificate")]
    ExcludedAngle,
    #[error("angle set has intervals; a finite set is required")]
    NotFinite,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Short variant name, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidMatrix(_) => "InvalidMatrix",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::NotRealizable { .. } => "NotRealizable",
            Error::NotUnitDiagonal { .. } => "NotUnitDiagonal",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidIndex { .. } => "InvalidIndex",
            Error::InvalidParams(_) => "InvalidParams",
            Error::ZeroProjection { .. } => "ZeroProjection",
            Error::NotAClique { .. } => "NotAClique",
            Error::SingularGram => "SingularGram",
            Error::TooLarge(_) => "TooLarge",
            Error::RandomizedFailure { .. } => "RandomizedFailure",
            Error::InternalError(_) => "InternalError",
            Error::NotAnLCode { .. } => "NotAnLCode",
            Error::TooSmall(_) => "TooSmall",
            Error::NoClique { .. } => "NoClique",
            Error::NotEquiangular => "NotEquiangular",
            Error::WrongStructure(_) => "WrongStructure",
            Error::ExcludedAngle => "ExcludedAngle",
            Error::NotFinite => "NotFinite",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension n = {n}: need n >= {min}")]
    InvalidDimension { n: usize, min: usize },
    #[error("invalid aspect ratio: Wishart needs n < p, got n = {n}, p = {p}")]
    InvalidAspectRatio { n: usize, p: usize },
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("invalid ensemble spec: {0}")]
    InvalidSpec(String),
    #[error("matrix contains non-finite entries")]
    NonFiniteInput,
    #[error("matrix is not square: {len} entries for dimension {n}")]
    NotSquare { len: usize, n: usize },
    #[error("eigenvalue iteration did not converge within {sweeps} implicit-shift sweeps")]
    NoConvergence { sweeps: usize },
    #[error("spectrum is not sorted ascending at index {index}")]
    NotSorted { index: usize },
    #[error("sequence too short: length {len}, need at least {min}")]
    TooShort { len: usize, min: usize },
    #[error("entropy undefined: total persistence is zero")]
    UndefinedEntropy,
    #[error("bulk selection is empty")]
    EmptyBulk,
    #[error("empty class in score set")]
    EmptyClass,
    #[error("pooled within-class covariance is singular")]
    SingularCovariance,
    #[error("diagram dimension mismatch: {left} vs {right} finite bars")]
    DimensionMismatch { left: usize, right: usize },
    #[error("zero variance")]
    ZeroVariance,
    #[error("data must be strictly positive")]
    NonPositiveData,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
    #[error("zero mean spacing")]
    ZeroMeanSpacing,
    #[error("malformed diagram CSV at line {line}: {reason}")]
    Csv { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

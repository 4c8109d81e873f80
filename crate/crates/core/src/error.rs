use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field specification: {0}")]
    InvalidSpec(String),
    #[error("{d} does not divide the root order {l}")]
    NotDivisor { d: u64, l: u64 },
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("element is not a root of unity")]
    NotTorsion,
    #[error("invalid braiding: {0}")]
    InvalidBraiding(String),
    #[error("wrong mode: {0}")]
    WrongMode(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division has no solution: {0}")]
    NotDivisible(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("cannot lift through degree {0}: the complex is not exact there")]
    LiftFailure(usize),
    #[error("not a cocycle in degree {0}")]
    NotCocycle(usize),
    #[error("degree {degree} is outside the computed range 0..={max}")]
    OutOfRange { degree: usize, max: usize },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

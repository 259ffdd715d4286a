use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is not complex: imaginary parts are not parallel (residual {residual:e})")]
    NotComplex { residual: f64 },
    #[error("dimension mismatch: expected {expected}x{expected}, found {found}x{found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no solution: momentum is not null (det P = {det})")]
    NoSolution { det: f64 },
    #[error("unknown group `{0}` (expected one of E6, F4, SO91, SO9, SO8, SO7, G2)")]
    UnknownGroup(String),
    #[error("singular group element: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, Error>;

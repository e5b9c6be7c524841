use thiserror::Error;

/// Errors shared across scalar and matrix operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value is not appreciable (standard part below tolerance)")]
    NotAppreciable,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is not invertible (standard part singular)")]
    NotInvertible,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("matrix is not positive semidefinite")]
    NotPsd,
    #[error("matrix is not partially unitary")]
    NotPartiallyUnitary,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("not an eigenpair: standard-part residual {0:.3e}")]
    NotAnEigenpair(f64),
    #[error("no infinitesimal completion exists (residual {0:.3e})")]
    NoCompletion(f64),
    #[error("eigenvalue pairing failed in the complex-adjoint image")]
    PairingFailure,
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

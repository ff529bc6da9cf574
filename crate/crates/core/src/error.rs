use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot combine elements of {left} and {right}")]
    FieldMismatch { left: String, right: String },
    #[error("unsupported cyclotomic order {0} (supported: 1..=128)")]
    UnsupportedOrder(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the smaller space is not contained in the larger one")]
    NotASubspace,
    #[error("subspace is not stable under the Galois action and has no rational form")]
    NotGaloisStable,
    #[error("unsupported exchange matrix: {0}")]
    UnsupportedExchangeMatrix(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("index out of range: {0}")]
    IndexError(String),
    #[error("quadrature did not converge: error estimate {estimate:e} exceeds tolerance {tol:e}")]
    QuadratureDiverged { estimate: f64, tol: f64 },
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("H^2(disk, j_*L) has dimension {0}, expected 0")]
    NonVanishingH2(usize),
    #[error("invalid monodromy: {0}")]
    InvalidMonodromy(String),
    #[error("invalid fibration: {0}")]
    InvalidFibration(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}

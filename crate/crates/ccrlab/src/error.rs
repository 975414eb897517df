use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not antisymmetric: max |A[k][l] + A[l][k]| = {drift:.3e} at ({k},{l})")]
    NotAntisymmetric { drift: f64, k: usize, l: usize },

    #[error("eigenvalue pairing failed: {0}")]
    PairingFailure(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("factorization failure: {0}")]
    FactorizationFailure(String),

    #[error("matrix is not Hermitian: residual {0:.3e}")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite: eigenvalue {0:.3e}")]
    NotPsd(f64),

    #[error("Fock dimension {dim} exceeds cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },

    #[error("corner degree {corner} exceeds cutoff {cutoff}")]
    CutoffExceeded { corner: u32, cutoff: u32 },

    #[error("eigensolver failed to converge")]
    EigensolveFailure,

    #[error("headroom violated: corner {corner} + 4 > cutoff {cutoff}")]
    HeadroomViolation { corner: u32, cutoff: u32 },

    #[error("cutoff mismatch: {0} vs {1}")]
    CutoffMismatch(u32, u32),

    #[error("delta {delta} is below the witness constant {witness}")]
    DeltaTooSmall { delta: f64, witness: f64 },

    #[error("empty parameter grid")]
    EmptyGrid,

    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),

    #[error("config parse error: {0}")]
    Parse(String),

    #[error("config validation error at `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by state construction, the closed-form metrics, the
/// coherence optimizer and the Fock-space oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("covariance matrix is not physical (a = {a}, b = {b}, det = {det})")]
    NonPhysical { a: f64, b: f64, det: f64 },

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("invalid optimizer options: {0}")]
    InvalidOptions(String),

    #[error("coherence is not monotone over [{lo}, {hi}] in the varied parameter")]
    NonMonotone { lo: f64, hi: f64 },

    #[error("invalid ladder: {0}")]
    InvalidLadder(String),

    #[error(
        "Fock truncation too small: tail mass {tail_mass:e} exceeds {tail_tol:e}, need dim >= {required_dim}"
    )]
    Truncation {
        tail_mass: f64,
        tail_tol: f64,
        required_dim: usize,
    },

    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("density matrix has eigenvalue {0:e} below tolerance")]
    NegativeEigenvalue(f64),

    #[error("trace has imaginary residue {0:e}")]
    ImaginaryResidue(f64),

    #[error("matrix exponential did not converge")]
    ExpmNonConvergence,

    #[error("oracle value not converged: |difference| = {difference:e} at dims {dims:?}")]
    NotConverged { difference: f64, dims: Vec<usize> },
}

pub type Result<T> = std::result::Result<T, Error>;

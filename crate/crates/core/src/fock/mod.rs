//! Brute-force oracle: the same states as truncated Fock-basis density
//! matrices, with fidelity and affinity computed spectrally.

mod density;
pub mod linalg;
mod operators;
mod spectral;
mod suite;

pub use density::{gaussian_density, gaussian_unitary, thermal_density, FockDensity};
pub use operators::{annihilation, displacement_op, squeeze_op, FockOperator};
pub use spectral::{
    affinity_fock, converged_value, converged_values, uhlmann_fidelity, Converged,
    CONVERGENCE_TOL,
};
pub use suite::{run_oracle_suite, OracleComparison, OracleGrid, OracleReport};

use crate::error::{Error, Result};

pub const DEFAULT_DIM: usize = 160;
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;
pub const MIN_DIM: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationSpec {
    /// Number of Fock levels kept.
    pub dim: usize,
    /// Largest thermal tail mass tolerated before the truncation is rejected.
    pub tail_tol: f64,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        Self {
            dim: DEFAULT_DIM,
            tail_tol: DEFAULT_TAIL_TOL,
        }
    }
}

impl TruncationSpec {
    pub fn new(dim: usize, tail_tol: f64) -> Result<Self> {
        let s = Self { dim, tail_tol };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < MIN_DIM {
            return Err(Error::InvalidTruncation(format!(
                "dim must be at least {MIN_DIM}, got {}",
                self.dim
            )));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol.is_finite()) {
            return Err(Error::InvalidTruncation(format!(
                "tail_tol must be positive, got {}",
                self.tail_tol
            )));
        }
        Ok(())
    }

    pub fn with_dim(&self, dim: usize) -> Self {
        Self { dim, ..*self }
    }
}

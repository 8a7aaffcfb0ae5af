use super::linalg::{expm, matmul, CMatrix, C64};
use super::TruncationSpec;
use crate::error::{Error, Result};
use crate::state::ComplexAmplitude;

/// Dense operator on the truncated Fock space `span{|0>, ..., |dim - 1>}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    entries: CMatrix,
}

impl FockOperator {
    pub fn from_matrix(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                left: entries.nrows(),
                right: entries.ncols(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NumericalBreakdown("operator has non-finite entries".into()));
        }
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: CMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
        }
    }

    pub fn compose(&self, rhs: &FockOperator) -> Self {
        Self {
            entries: matmul(&self.entries, &rhs.entries),
        }
    }

    pub fn exp(&self) -> Result<Self> {
        Ok(Self {
            entries: expm(&self.entries)?,
        })
    }
}

/// Truncated annihilation operator, `a |n> = sqrt(n) |n - 1>`.
pub fn annihilation(spec: &TruncationSpec) -> FockOperator {
    let dim = spec.dim;
    let mut entries = CMatrix::zeros(dim, dim);
    for n in 1..dim {
        entries[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    FockOperator { entries }
}

/// `D(beta) = exp(beta a^dag - beta^* a)`.
pub fn displacement_op(beta: ComplexAmplitude, spec: &TruncationSpec) -> Result<FockOperator> {
    if !beta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: f64::NAN,
            reason: "must be finite",
        });
    }
    if beta.norm_sqr() == 0.0 {
        return Ok(FockOperator::identity(spec.dim));
    }
    let a = annihilation(spec).entries;
    let b = C64::new(beta.re, beta.im);
    let generator = a.adjoint().map(|z| z * b) - a.map(|z| z * b.conj());
    FockOperator::from_matrix(generator)?.exp()
}

/// `S(xi) = exp(xi (a^dag)^2 / 2 - xi^* a^2 / 2)` with `xi = r e^{i psi}`.
pub fn squeeze_op(r: f64, psi: f64, spec: &TruncationSpec) -> Result<FockOperator> {
    if !(r.is_finite() && psi.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "squeezing parameters must be finite",
        });
    }
    if r == 0.0 {
        return Ok(FockOperator::identity(spec.dim));
    }
    let a = annihilation(spec).entries;
    let a2 = &a * &a;
    let xi = C64::from_polar(r, psi);
    let generator = a2.adjoint().map(|z| z * xi * 0.5) - a2.map(|z| z * xi.conj() * 0.5);
    FockOperator::from_matrix(generator)?.exp()
}

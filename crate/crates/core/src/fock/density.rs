use std::sync::OnceLock;

use super::linalg::{hermitian_eigenvalues, hermitian_part, is_diagonal, matmul, max_abs, psd_sqrt, CMatrix, C64};
use super::operators::{displacement_op, squeeze_op, FockOperator};
use super::TruncationSpec;
use crate::error::{Error, Result};
use crate::state::StateParams;

/// Allowed `max |rho - rho^dag|` before a matrix is rejected as non-Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Truncated, renormalized density matrix. The principal square root is
/// computed on first use and cached.
#[derive(Debug, Clone)]
pub struct FockDensity {
    entries: CMatrix,
    tail_mass: f64,
    diagonal: bool,
    sqrt: OnceLock<CMatrix>,
}

impl FockDensity {
    /// Hermitizes and renormalizes `entries` to unit trace.
    pub fn from_matrix(entries: CMatrix, tail_mass: f64) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                left: entries.nrows(),
                right: entries.ncols(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NumericalBreakdown("density has non-finite entries".into()));
        }
        let asym = max_abs(&(&entries - entries.adjoint()));
        if asym > HERMITICITY_TOL {
            return Err(Error::NumericalBreakdown(format!(
                "density is not Hermitian (max |rho - rho^dag| = {asym:e})"
            )));
        }
        let herm = hermitian_part(&entries);
        let trace = herm.trace().re;
        if !(trace > 0.0) {
            return Err(Error::NumericalBreakdown(format!("density trace {trace} is not positive")));
        }
        let entries = herm.map(|z| z / trace);
        Ok(Self {
            diagonal: is_diagonal(&entries),
            entries,
            tail_mass,
            sqrt: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// Probability weight removed by truncation before renormalization.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.entries).min()
    }

    /// `Tr[rho a^dag a]`.
    pub fn mean_photon_number(&self) -> f64 {
        (0..self.dim()).map(|n| n as f64 * self.entries[(n, n)].re).sum()
    }

    pub fn sqrt(&self) -> Result<&CMatrix> {
        if let Some(s) = self.sqrt.get() {
            return Ok(s);
        }
        let s = psd_sqrt(&self.entries)?;
        Ok(self.sqrt.get_or_init(|| s))
    }

    /// `U rho U^dag`, keeping this density's tail mass.
    pub fn conjugated(&self, u: &FockOperator) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: u.dim(),
                right: self.dim(),
            });
        }
        let rotated = if self.diagonal {
            // rho = W W^dag with W = U diag(sqrt(p)).
            let mut w = u.entries().clone();
            for (j, mut col) in w.column_iter_mut().enumerate() {
                col *= C64::new(self.entries[(j, j)].re.max(0.0).sqrt(), 0.0);
            }
            matmul(&w, &w.adjoint())
        } else {
            matmul(&matmul(u.entries(), &self.entries), &u.entries().adjoint())
        };
        Self::from_matrix(hermitian_part(&rotated), self.tail_mass)
    }
}

/// Thermal state `p_n = n_th^n / (1 + n_th)^{n+1}`, truncated and renormalized.
pub fn thermal_density(n_th: f64, spec: &TruncationSpec) -> Result<FockDensity> {
    spec.validate()?;
    if !(n_th.is_finite() && n_th >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "n_th",
            value: n_th,
            reason: "must be finite and non-negative",
        });
    }
    let dim = spec.dim;
    let ratio = n_th / (1.0 + n_th);
    let tail_mass = ratio.powi(dim as i32);
    if tail_mass > spec.tail_tol {
        let required_dim = (spec.tail_tol.ln() / ratio.ln()).ceil() as usize;
        return Err(Error::Truncation {
            tail_mass,
            tail_tol: spec.tail_tol,
            required_dim,
        });
    }
    let mut diag = Vec::with_capacity(dim);
    let mut p = 1.0 / (1.0 + n_th);
    for _ in 0..dim {
        diag.push(C64::new(p, 0.0));
        p *= ratio;
    }
    FockDensity::from_matrix(CMatrix::from_diagonal(&diag.into()), tail_mass)
}

/// `U(beta, r, psi)`: displacement after squeezing.
pub fn gaussian_unitary(p: &StateParams, spec: &TruncationSpec) -> Result<FockOperator> {
    p.validate()?;
    let d = displacement_op(p.beta, spec)?;
    let s = squeeze_op(p.r, p.psi, spec)?;
    Ok(match (p.beta.norm_sqr() == 0.0, p.r == 0.0) {
        (true, true) => FockOperator::identity(spec.dim),
        (true, false) => s,
        (false, true) => d,
        (false, false) => d.compose(&s),
    })
}

/// `D(beta) S(xi) nu(n_th) S^dag(xi) D^dag(beta)` on the truncated space.
pub fn gaussian_density(p: &StateParams, spec: &TruncationSpec) -> Result<FockDensity> {
    let nu = thermal_density(p.n_th, spec)?;
    nu.conjugated(&gaussian_unitary(p, spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::ComplexAmplitude;

    fn spec(dim: usize) -> TruncationSpec {
        TruncationSpec::new(dim, 1e-10).unwrap()
    }

    fn check_valid(rho: &FockDensity) {
        assert!(max_abs(&(rho.entries() - rho.entries().adjoint())) <= 1e-12);
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        assert!(rho.trace().im.abs() < 1e-12);
        assert!(rho.min_eigenvalue() >= -1e-10);
    }

    #[test]
    fn vacuum_thermal() {
        let rho = thermal_density(0.0, &spec(8)).unwrap();
        assert_eq!(rho.entries()[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(rho.tail_mass(), 0.0);
        assert!((1..8).all(|n| rho.entries()[(n, n)].re == 0.0));
    }

    #[test]
    fn thermal_weights_and_tail() {
        let rho = thermal_density(1.0, &spec(60)).unwrap();
        for n in 0..10 {
            let expected = 0.5f64.powi(n as i32 + 1);
            assert!((rho.entries()[(n, n)].re - expected).abs() < 1e-15);
        }
        assert!((rho.tail_mass() - 2f64.powi(-60)).abs() < 1e-30);
        assert!(rho.tail_mass() < 1e-10);
        check_valid(&rho);
    }

    #[test]
    fn thermal_tail_error_names_required_dim() {
        match thermal_density(2.0, &spec(16)) {
            Err(Error::Truncation { required_dim, .. }) => {
                assert!((2f64 / 3.0).powi(required_dim as i32) <= 1e-10);
                assert!((2f64 / 3.0).powi(required_dim as i32 - 1) > 1e-10);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(thermal_density(-1.0, &spec(16)).is_err());
    }

    #[test]
    fn gaussian_vacuum() {
        let rho = gaussian_density(&StateParams::default(), &spec(8)).unwrap();
        assert!((rho.entries()[(0, 0)].re - 1.0).abs() < 1e-15);
        assert_eq!(max_abs(&rho.entries().view((1, 1), (7, 7)).into_owned()), 0.0);
    }

    #[test]
    fn displaced_thermal_photon_number() {
        let p = StateParams::new(ComplexAmplitude::real(1.0), 0.0, 0.0, 1.0);
        let rho = gaussian_density(&p, &spec(160)).unwrap();
        assert!((rho.mean_photon_number() - 2.0).abs() < 1e-6);
        check_valid(&rho);
    }

    #[test]
    fn squeezed_displaced_photon_number() {
        // <a^dag a> = |beta|^2 + (n_th + 1/2) cosh(2r) - 1/2.
        let p = StateParams::new(ComplexAmplitude::new(0.5, 0.5), 0.6, 1.1, 0.7);
        let rho = gaussian_density(&p, &spec(160)).unwrap();
        let expected = 0.5 + 1.2 * 1.2f64.cosh() - 0.5;
        assert!((rho.mean_photon_number() - expected).abs() < 1e-6);
        check_valid(&rho);
    }

    #[test]
    fn undisplaced_unsqueezed_is_thermal() {
        let spec = spec(80);
        let rho = gaussian_density(&StateParams::new(ComplexAmplitude::ZERO, 0.0, 0.0, 2.0), &spec).unwrap();
        let nu = thermal_density(2.0, &spec).unwrap();
        assert!(max_abs(&(rho.entries() - nu.entries())) < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::identity(3, 3);
        m[(0, 1)] = C64::new(0.1, 0.0);
        assert!(FockDensity::from_matrix(m, 0.0).is_err());
    }
}

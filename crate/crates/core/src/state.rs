//! Single-mode Gaussian states in phase space.
//!
//! Conventions: hbar = 1, quadratures X = (a + a^dag)/sqrt(2), P = (a - a^dag)/(i sqrt(2)),
//! so the vacuum covariance matrix is I/2 and a coherent amplitude beta sits at
//! R = sqrt(2) (Re beta, Im beta).

use crate::error::{Error, Result};

/// Tolerance on `det sigma >= 1/4` used by [`is_physical`].
pub const PHYSICALITY_EPS: f64 = 1e-12;

/// Default absolute tolerance for [`is_incoherent`].
pub const DEFAULT_INCOHERENCE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexAmplitude {
    pub re: f64,
    pub im: f64,
}

impl ComplexAmplitude {
    pub const ZERO: Self = Self { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn from_polar(modulus: f64, phase: f64) -> Self {
        Self {
            re: modulus * phase.cos(),
            im: modulus * phase.sin(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Physical parametrization `D(beta) S(r e^{i psi}) nu(n_th) S^dag D^dag`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StateParams {
    pub beta: ComplexAmplitude,
    /// Squeezing magnitude.
    pub r: f64,
    /// Squeezing phase.
    pub psi: f64,
    /// Mean thermal photon number.
    pub n_th: f64,
}

impl StateParams {
    pub fn new(beta: ComplexAmplitude, r: f64, psi: f64, n_th: f64) -> Self {
        Self { beta, r, psi, n_th }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.beta.re.is_finite() {
            return Err(invalid("beta.re", self.beta.re, "must be finite"));
        }
        if !self.beta.im.is_finite() {
            return Err(invalid("beta.im", self.beta.im, "must be finite"));
        }
        check_non_negative("r", self.r)?;
        if !self.psi.is_finite() {
            return Err(invalid("psi", self.psi, "must be finite"));
        }
        check_non_negative("n_th", self.n_th)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhaseSpaceVector {
    pub x: f64,
    pub p: f64,
}

impl PhaseSpaceVector {
    pub const ORIGIN: Self = Self { x: 0.0, p: 0.0 };

    pub fn new(x: f64, p: f64) -> Self {
        Self { x, p }
    }
}

/// Symmetric covariance matrix `[[a, c], [c, b]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl CovarianceMatrix {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn diagonal(a: f64, b: f64) -> Self {
        Self { a, b, c: 0.0 }
    }

    pub fn scaled_identity(s: f64) -> Self {
        Self { a: s, b: s, c: 0.0 }
    }

    pub fn det(&self) -> f64 {
        self.a * self.b - self.c * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.b
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite()
    }

    pub fn is_physical(&self) -> bool {
        self.is_finite() && self.a > 0.0 && self.b > 0.0 && self.det() >= 0.25 - PHYSICALITY_EPS
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.a + other.a, self.b + other.b, self.c + other.c)
    }

    /// `v^T M^{-1} v` via the adjugate.
    pub fn inverse_quadratic_form(&self, v: &PhaseSpaceVector) -> f64 {
        (self.b * v.x * v.x - 2.0 * self.c * v.x * v.p + self.a * v.p * v.p) / self.det()
    }
}

/// The one-mode symplectic form `[[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SymplecticForm;

impl SymplecticForm {
    pub const MATRIX: [[f64; 2]; 2] = [[0.0, 1.0], [-1.0, 0.0]];

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        Self::MATRIX
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianState {
    pub mean: PhaseSpaceVector,
    pub cov: CovarianceMatrix,
}

impl GaussianState {
    /// Builds a state from raw moments, rejecting unphysical covariance matrices.
    pub fn new(mean: PhaseSpaceVector, cov: CovarianceMatrix) -> Result<Self> {
        let state = Self { mean, cov };
        ensure_physical(&state)?;
        Ok(state)
    }

    pub fn vacuum() -> Self {
        Self {
            mean: PhaseSpaceVector::ORIGIN,
            cov: CovarianceMatrix::scaled_identity(0.5),
        }
    }

    /// Applies the phase-space rotation `O(theta)` to both moments.
    pub fn rotated(&self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let CovarianceMatrix { a, b, c: off } = self.cov;
        let mean = PhaseSpaceVector::new(
            c * self.mean.x - s * self.mean.p,
            s * self.mean.x + c * self.mean.p,
        );
        let cov = CovarianceMatrix::new(
            c * c * a - 2.0 * c * s * off + s * s * b,
            s * s * a + 2.0 * c * s * off + c * c * b,
            c * s * (a - b) + (c * c - s * s) * off,
        );
        Self { mean, cov }
    }

    /// Thermal occupation whose covariance has the same trace, clamped at zero.
    pub fn trace_thermal_occupation(&self) -> f64 {
        ((self.cov.trace() - 1.0) / 2.0).max(0.0)
    }
}

pub fn is_physical(s: &GaussianState) -> bool {
    s.mean.x.is_finite() && s.mean.p.is_finite() && s.cov.is_physical()
}

pub(crate) fn ensure_physical(s: &GaussianState) -> Result<()> {
    if is_physical(s) {
        Ok(())
    } else {
        Err(Error::NonPhysical {
            a: s.cov.a,
            b: s.cov.b,
            det: s.cov.det(),
        })
    }
}

/// True when the state is a thermal state up to `eps`: zero first moments,
/// no off-diagonal covariance and equal diagonal entries.
pub fn is_incoherent(s: &GaussianState, eps: f64) -> bool {
    s.mean.x.abs() <= eps
        && s.mean.p.abs() <= eps
        && s.cov.c.abs() <= eps
        && (s.cov.a - s.cov.b).abs() <= eps
}

pub fn from_params(p: &StateParams) -> Result<GaussianState> {
    p.validate()?;
    let scale = thermal_scale(p.n_th);
    // cosh 2r +- cos psi sinh 2r written as sums of non-negative terms; the
    // difference form cancels to zero once e^{4r} exceeds 1/eps.
    let (up, down) = ((2.0 * p.r).exp(), (-2.0 * p.r).exp());
    let (sin_half, cos_half) = (0.5 * p.psi).sin_cos();
    let (sin2, cos2) = (sin_half * sin_half, cos_half * cos_half);
    let cov = CovarianceMatrix::new(
        scale * (up * cos2 + down * sin2),
        scale * (up * sin2 + down * cos2),
        scale * p.psi.sin() * (2.0 * p.r).sinh(),
    );
    GaussianState::new(displacement_vector(&p.beta), cov)
}

pub fn thermal_state(n: f64) -> Result<GaussianState> {
    check_non_negative("n_th", n)?;
    Ok(GaussianState {
        mean: PhaseSpaceVector::ORIGIN,
        cov: CovarianceMatrix::scaled_identity(thermal_scale(n)),
    })
}

/// Squeezed thermal state with real squeezing (psi = 0), optionally displaced.
pub fn sts(r: f64, n_th: f64, beta: ComplexAmplitude) -> Result<GaussianState> {
    from_params(&StateParams::new(beta, r, 0.0, n_th))
}

/// Displaced thermal state.
pub fn cts(beta: ComplexAmplitude, n_th: f64) -> Result<GaussianState> {
    from_params(&StateParams::new(beta, 0.0, 0.0, n_th))
}

/// Thermal squeezed state with covariance `diag(n_th + e^{2r}, n_th + e^{-2r})`.
///
/// The matrix is taken literally, so `tss(0, 0)` is the identity rather than the
/// vacuum covariance `I/2`. It is still physical for every `r, n_th >= 0`.
pub fn tss(r: f64, n_th: f64) -> Result<GaussianState> {
    check_non_negative("r", r)?;
    check_non_negative("n_th", n_th)?;
    let e = (2.0 * r).exp();
    GaussianState::new(
        PhaseSpaceVector::ORIGIN,
        CovarianceMatrix::diagonal(n_th + e, n_th + 1.0 / e),
    )
}

fn thermal_scale(n: f64) -> f64 {
    (1.0 + 2.0 * n) / 2.0
}

fn displacement_vector(beta: &ComplexAmplitude) -> PhaseSpaceVector {
    PhaseSpaceVector::new(
        std::f64::consts::SQRT_2 * beta.re,
        std::f64::consts::SQRT_2 * beta.im,
    )
}

fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}

fn check_non_negative(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        Err(invalid(name, value, "must be finite"))
    } else if value < 0.0 {
        Err(invalid(name, value, "must be non-negative"))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_2, SQRT_2};

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * (1.0 + y.abs())
    }

    #[test]
    fn vacuum_from_params() {
        let s = from_params(&StateParams::default()).unwrap();
        assert_eq!(s, GaussianState::vacuum());
    }

    #[test]
    fn squeezed_vacuum_entries() {
        let s = from_params(&StateParams::new(ComplexAmplitude::ZERO, 1.0, 0.0, 0.0)).unwrap();
        assert!(close(s.cov.a, E * E / 2.0, 1e-14));
        assert!(close(s.cov.a, 3.694528, 1e-6));
        assert!(close(s.cov.b, (-2.0f64).exp() / 2.0, 1e-14));
        assert!(close(s.cov.b, 0.067668, 1e-5));
        assert_eq!(s.cov.c, 0.0);
    }

    #[test]
    fn quadrature_phase_squeezing() {
        let s =
            from_params(&StateParams::new(ComplexAmplitude::ZERO, 0.5, FRAC_PI_2, 1.0)).unwrap();
        assert!(close(s.cov.a, 1.5 * 1f64.cosh(), 1e-14));
        assert!(close(s.cov.b, 1.5 * 1f64.cosh(), 1e-14));
        assert!(close(s.cov.c, 1.5 * 1f64.sinh(), 1e-14));
    }

    #[test]
    fn rejects_bad_params() {
        let bad = [
            StateParams::new(ComplexAmplitude::ZERO, -0.1, 0.0, 0.0),
            StateParams::new(ComplexAmplitude::ZERO, 0.0, 0.0, -1.0),
            StateParams::new(ComplexAmplitude::new(f64::NAN, 0.0), 0.0, 0.0, 0.0),
            StateParams::new(ComplexAmplitude::ZERO, f64::INFINITY, 0.0, 0.0),
            StateParams::new(ComplexAmplitude::ZERO, 0.0, f64::NAN, 0.0),
        ];
        for p in bad {
            assert!(matches!(
                from_params(&p),
                Err(Error::InvalidParameter { .. })
            ));
        }
        assert!(thermal_state(-1.0).is_err());
        assert!(thermal_state(f64::NAN).is_err());
        assert!(tss(-1.0, 0.0).is_err());
    }

    #[test]
    fn thermal_states() {
        for (n, s) in [(0.0, 0.5), (1.0, 1.5), (2.0, 2.5)] {
            let t = thermal_state(n).unwrap();
            assert_eq!(t.mean, PhaseSpaceVector::ORIGIN);
            assert_eq!(t.cov, CovarianceMatrix::scaled_identity(s));
        }
    }

    #[test]
    fn sts_examples() {
        assert_eq!(
            sts(0.0, 0.0, ComplexAmplitude::ZERO).unwrap(),
            GaussianState::vacuum()
        );
        let s = sts(1.0, 2.0, ComplexAmplitude::ZERO).unwrap();
        assert!(close(s.cov.a, 2.5 * E * E, 1e-14));
        assert!(close(s.cov.b, 2.5 / (E * E), 1e-14));
        let s = sts(1.0, 0.0, ComplexAmplitude::real(1.0)).unwrap();
        assert!(close(s.mean.x, SQRT_2, 1e-15));
        assert_eq!(s.mean.p, 0.0);
        assert!(close(s.cov.a, E * E / 2.0, 1e-14));
    }

    #[test]
    fn cts_examples() {
        assert_eq!(
            cts(ComplexAmplitude::ZERO, 1.0).unwrap(),
            thermal_state(1.0).unwrap()
        );
        let s = cts(ComplexAmplitude::real(1.0), 0.0).unwrap();
        assert!(close(s.mean.x, SQRT_2, 1e-15));
        assert_eq!(s.cov, CovarianceMatrix::scaled_identity(0.5));
        let s = cts(ComplexAmplitude::real(2.0), 2.0).unwrap();
        assert!(close(s.mean.x, 2.0 * SQRT_2, 1e-15));
        assert_eq!(s.cov, CovarianceMatrix::scaled_identity(2.5));
    }

    #[test]
    fn tss_is_literal() {
        assert_eq!(tss(0.0, 0.0).unwrap().cov, CovarianceMatrix::scaled_identity(1.0));
        let s = tss(1.0, 1.0).unwrap();
        assert!(close(s.cov.a, 1.0 + E * E, 1e-14));
        assert!(close(s.cov.b, 1.0 + 1.0 / (E * E), 1e-14));
        assert_eq!(tss(0.0, 3.0).unwrap().cov, CovarianceMatrix::scaled_identity(4.0));
    }

    #[test]
    fn physicality() {
        assert!(is_physical(&GaussianState::vacuum()));
        let squashed = GaussianState {
            mean: PhaseSpaceVector::ORIGIN,
            cov: CovarianceMatrix::diagonal(0.1, 0.1),
        };
        assert!(!is_physical(&squashed));
        assert!(GaussianState::new(squashed.mean, squashed.cov).is_err());
    }

    #[test]
    fn incoherence_examples() {
        assert!(is_incoherent(&thermal_state(2.0).unwrap(), 1e-9));
        assert!(!is_incoherent(
            &sts(0.1, 0.0, ComplexAmplitude::ZERO).unwrap(),
            1e-9
        ));
        assert!(is_incoherent(
            &cts(ComplexAmplitude::real(1e-14), 1.0).unwrap(),
            1e-9
        ));
    }

    #[test]
    fn incoherent_exactly_without_displacement_or_squeezing() {
        for beta in [0.0, 0.1, 1.0] {
            for r in [0.0, 0.1, 1.0] {
                for n_th in [0.0, 1.0, 5.0] {
                    let s = from_params(&StateParams::new(
                        ComplexAmplitude::real(beta),
                        r,
                        0.3,
                        n_th,
                    ))
                    .unwrap();
                    assert_eq!(
                        is_incoherent(&s, DEFAULT_INCOHERENCE_EPS),
                        beta == 0.0 && r == 0.0
                    );
                }
            }
        }
    }

    #[test]
    fn thermal_builders_agree() {
        for n in [0.0, 0.5, 1.0, 7.0] {
            let t = thermal_state(n).unwrap();
            assert_eq!(t, cts(ComplexAmplitude::ZERO, n).unwrap());
            assert_eq!(t, sts(0.0, n, ComplexAmplitude::ZERO).unwrap());
        }
    }

    #[test]
    fn symplectic_form() {
        let o = SymplecticForm.matrix();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(o[i][j], -o[j][i]);
                let sq: f64 = (0..2).map(|k| o[i][k] * o[k][j]).sum();
                assert_eq!(sq, if i == j { -1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn rotation_preserves_invariants() {
        let s = from_params(&StateParams::new(ComplexAmplitude::new(0.3, -0.7), 0.8, 1.1, 0.4))
            .unwrap();
        let t = s.rotated(0.9);
        assert!(close(t.cov.det(), s.cov.det(), 1e-13));
        assert!(close(t.cov.trace(), s.cov.trace(), 1e-13));
        let norm = |v: PhaseSpaceVector| v.x * v.x + v.p * v.p;
        assert!(close(norm(t.mean), norm(s.mean), 1e-13));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn from_params_moment_identities(
                r in 0.0..2.0f64,
                psi in 0.0..std::f64::consts::TAU,
                n_th in 0.0..20.0f64,
                re in -3.0..3.0f64,
                im in -3.0..3.0f64,
            ) {
                let s = from_params(&StateParams::new(ComplexAmplitude::new(re, im), r, psi, n_th)).unwrap();
                let u = (1.0 + 2.0 * n_th) / 2.0;
                prop_assert!(is_physical(&s));
                prop_assert!(close(s.cov.det(), u * u, 1e-12));
                prop_assert!(close(s.cov.trace(), (1.0 + 2.0 * n_th) * (2.0 * r).cosh(), 1e-12));
            }
        }
    }
}

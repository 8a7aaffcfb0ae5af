//! Closed-form fidelity, affinity and squared Bures/Hellinger distances
//! between single-mode Gaussian states.

use crate::error::{Error, Result};
use crate::state::{ensure_physical, GaussianState, PhaseSpaceVector};

/// Slack allowed above 1 before a fidelity or affinity is treated as a numerical failure.
pub const UNIT_SLACK: f64 = 1e-12;

/// Determinants and the Gaussian exponent entering the fidelity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityIngredients {
    /// `det(sigma_1 + sigma_2)`.
    pub delta: f64,
    /// `4 det(sigma_1 + i Omega / 2) det(sigma_2 + i Omega / 2)`.
    pub lambda: f64,
    /// `-dR^T (sigma_1 + sigma_2)^{-1} dR / 2`.
    pub exponent: f64,
}

/// `det(sigma + i Omega / 2)` for a one-mode covariance matrix, which is real and
/// equals `det sigma - 1/4`. Values inside the physicality tolerance are clamped to 0.
fn symplectic_excess(s: &GaussianState) -> f64 {
    (s.cov.det() - 0.25).max(0.0)
}

pub fn fidelity_ingredients(s1: &GaussianState, s2: &GaussianState) -> Result<FidelityIngredients> {
    ensure_physical(s1)?;
    ensure_physical(s2)?;
    let sum = s1.cov.add(&s2.cov);
    let delta = sum.det();
    if !(delta > 0.0) {
        return Err(Error::NumericalBreakdown(format!(
            "det(sigma_1 + sigma_2) = {delta} is not positive"
        )));
    }
    let dr = PhaseSpaceVector::new(s1.mean.x - s2.mean.x, s1.mean.p - s2.mean.p);
    let exponent = -0.5 * sum.inverse_quadratic_form(&dr);
    let lambda = 4.0 * symplectic_excess(s1) * symplectic_excess(s2);
    Ok(FidelityIngredients {
        delta,
        lambda,
        exponent: exponent.min(0.0),
    })
}

/// Gaussian fidelity `e^{exponent} / (sqrt(Delta + Lambda) - sqrt(Lambda))`.
///
/// This is the squared Uhlmann fidelity `(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`.
/// The denominator is evaluated in rationalized form,
/// `Delta / (sqrt(Delta + Lambda) + sqrt(Lambda))`, which has no cancellation when
/// `Lambda >> Delta`.
pub fn fidelity(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    let ing = fidelity_ingredients(s1, s2)?;
    if s1 == s2 {
        return Ok(1.0);
    }
    let f = ing.exponent.exp() * ((ing.delta + ing.lambda).sqrt() + ing.lambda.sqrt()) / ing.delta;
    clamp_unit("fidelity", f)
}

/// Gaussian affinity `2 e^{exponent} (det sigma_1 det sigma_2)^{1/4} / det(sigma_1 + sigma_2)^{1/2}`.
pub fn affinity(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    let ing = fidelity_ingredients(s1, s2)?;
    // Both closed forms round to 1 - eps for identical states.
    if s1 == s2 {
        return Ok(1.0);
    }
    let a = 2.0 * ing.exponent.exp() * s1.cov.det().sqrt().sqrt() * s2.cov.det().sqrt().sqrt()
        / ing.delta.sqrt();
    clamp_unit("affinity", a)
}

/// `d_Bu^2 = 2 (1 - sqrt(F))`.
pub fn bures_distance_sq(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    Ok(2.0 * (1.0 - fidelity(s1, s2)?.sqrt()))
}

/// `d_He^2 = 2 (1 - sqrt(A))`.
pub fn hellinger_distance_sq(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    Ok(2.0 * (1.0 - affinity(s1, s2)?.sqrt()))
}

fn clamp_unit(what: &str, v: f64) -> Result<f64> {
    if !(0.0..=1.0 + UNIT_SLACK).contains(&v) {
        return Err(Error::NumericalBreakdown(format!("{what} = {v} outside [0, 1]")));
    }
    Ok(v.min(1.0))
}

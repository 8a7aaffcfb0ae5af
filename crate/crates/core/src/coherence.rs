//! Geometric coherence: one minus the largest root fidelity (Bures) or root
//! affinity (Hellinger) between a state and the thermal states.
//!
//! The maximization over the thermal occupation `n_i` scans a log-spaced grid
//! plus the candidates `n_i = 0` and `n_i = (a + b - 1) / 2`, then refines the
//! best bracket with golden-section search.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::family::{Family, FamilyParams, Param};
use crate::golden;
use crate::metrics::{affinity, fidelity};
use crate::state::{ensure_physical, thermal_state, GaussianState};

/// Relative bracket width at which [`threshold_search`] stops.
pub const THRESHOLD_REL_TOL: f64 = 1e-3;

/// Consecutive ladder values closer than this count as a plateau.
pub const PLATEAU_TOL: f64 = 1e-6;

pub const DEFAULT_LADDER: [f64; 6] = [1e2, 1e3, 1e4, 1e5, 1e6, 1e7];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Bures,
    Hellinger,
}

impl Measure {
    pub const ALL: [Measure; 2] = [Measure::Bures, Measure::Hellinger];

    pub fn name(&self) -> &'static str {
        match self {
            Measure::Bures => "bures",
            Measure::Hellinger => "hellinger",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown measure `{s}` (expected bures or hellinger)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    pub grid_lo: f64,
    pub grid_hi: f64,
    pub points_per_decade: usize,
    pub value_tol: f64,
    pub domain_tol: f64,
    pub max_iters: usize,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            grid_lo: 1e-8,
            grid_hi: 1e12,
            points_per_decade: 8,
            value_tol: 1e-12,
            domain_tol: 1e-10,
            max_iters: 200,
        }
    }
}

impl OptimizerOptions {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidOptions(msg));
        if !(self.grid_lo > 0.0 && self.grid_lo.is_finite() && self.grid_hi.is_finite()) {
            return bad(format!(
                "grid bounds must be finite with grid_lo > 0 (got {}, {})",
                self.grid_lo, self.grid_hi
            ));
        }
        if self.grid_lo >= self.grid_hi {
            return bad(format!(
                "grid_lo ({}) must be below grid_hi ({})",
                self.grid_lo, self.grid_hi
            ));
        }
        if self.points_per_decade == 0 {
            return bad("points_per_decade must be positive".into());
        }
        if !(self.value_tol > 0.0 && self.domain_tol > 0.0) {
            return bad("tolerances must be positive".into());
        }
        if self.max_iters == 0 {
            return bad("max_iters must be positive".into());
        }
        Ok(())
    }

    /// The log-spaced scan grid, endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let (l0, l1) = (self.grid_lo.log10(), self.grid_hi.log10());
        let n = ((l1 - l0) * self.points_per_decade as f64).ceil().max(1.0) as usize;
        (0..=n)
            .map(|k| {
                if k == n {
                    self.grid_hi
                } else {
                    10f64.powf(l0 + (l1 - l0) * k as f64 / n as f64)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceResult {
    /// `1 - objective_at_max`.
    pub value: f64,
    /// Thermal occupation of the closest thermal state.
    pub argmax_ni: f64,
    pub objective_at_max: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// `sqrt(F)` (Bures) or `sqrt(A)` (Hellinger) against the thermal state with occupation `ni`.
pub fn objective(s: &GaussianState, ni: f64, m: Measure) -> Result<f64> {
    let reference = thermal_state(ni)?;
    let v = match m {
        Measure::Bures => fidelity(s, &reference)?,
        Measure::Hellinger => affinity(s, &reference)?,
    };
    Ok(v.sqrt())
}

pub fn maximize_over_thermal(
    s: &GaussianState,
    m: Measure,
    opts: &OptimizerOptions,
) -> Result<CoherenceResult> {
    ensure_physical(s)?;
    opts.validate()?;

    let mut points = opts.grid();
    points.push(0.0);
    points.push(s.trace_thermal_occupation());
    points.sort_by(f64::total_cmp);
    points.dedup();

    let mut values = Vec::with_capacity(points.len());
    for &ni in &points {
        values.push(objective(s, ni, m)?);
    }
    let mut evaluations = values.len();

    let best = values
        .iter()
        .enumerate()
        .fold(0, |best, (i, v)| if *v > values[best] { i } else { best });
    let lo = points[best.saturating_sub(1)];
    let hi = points[(best + 1).min(points.len() - 1)];

    // The refinement objective cannot fail once every grid point succeeded
    // (thermal references are valid for any ni >= 0); a failure maps to -inf.
    let eval = |ni: f64| objective(s, ni, m).unwrap_or(f64::NEG_INFINITY);
    let refined = if lo == 0.0 {
        golden::maximize(
            eval,
            lo,
            hi,
            |_, hi| opts.domain_tol * hi.max(opts.grid_lo),
            opts.value_tol,
            opts.max_iters,
        )
    } else {
        let g = golden::maximize(
            |t: f64| eval(t.exp()),
            lo.ln(),
            hi.ln(),
            |_, _| opts.domain_tol,
            opts.value_tol,
            opts.max_iters,
        );
        golden::GoldenMax { x: g.x.exp(), ..g }
    };
    evaluations += refined.evaluations;

    let (argmax_ni, objective_at_max) = if refined.value > values[best] {
        (refined.x, refined.value)
    } else {
        (points[best], values[best])
    };
    // A maximum pinned at the top of the scan range may lie beyond it.
    let at_upper_edge = best == points.len() - 1 && points[best] >= opts.grid_hi;

    Ok(CoherenceResult {
        value: (1.0 - objective_at_max).max(0.0),
        argmax_ni,
        objective_at_max,
        evaluations,
        converged: refined.converged && !at_upper_edge,
    })
}

pub fn coherence(s: &GaussianState, m: Measure, opts: &OptimizerOptions) -> Result<CoherenceResult> {
    maximize_over_thermal(s, m, opts)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    Reached(f64),
    /// The target is not reached anywhere in the bracket.
    NotReached,
}

/// Locates where the coherence of `family` crosses `target` as `vary` moves
/// over `[lo, hi]`.
///
/// Bisection runs in log scale for photon-number parameters (when `lo > 0`)
/// and stops at relative bracket width [`THRESHOLD_REL_TOL`]. Both endpoints
/// above the target returns `lo`.
#[allow(clippy::too_many_arguments)]
pub fn threshold_search(
    family: Family,
    m: Measure,
    target: f64,
    fixed: &FamilyParams,
    vary: Param,
    lo: f64,
    hi: f64,
    opts: &OptimizerOptions,
) -> Result<Threshold> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::InvalidParameter {
            name: "target",
            value: target,
            reason: "must lie in (0, 1)",
        });
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidParameter {
            name: "lo",
            value: lo,
            reason: "bracket must be finite with lo < hi",
        });
    }
    let eval = |x: f64| -> Result<f64> {
        let state = family.state(&fixed.with(vary, x)?)?;
        Ok(coherence(&state, m, opts)?.value)
    };

    let (c_lo, c_hi) = (eval(lo)?, eval(hi)?);
    let (c_min, c_max) = (c_lo.min(c_hi), c_lo.max(c_hi));
    if c_max < target {
        return Ok(Threshold::NotReached);
    }
    if c_min >= target {
        return Ok(Threshold::Reached(lo));
    }

    let log_scale = vary.is_photon_number() && lo > 0.0;
    let midpoint = |a: f64, b: f64| {
        if log_scale {
            (a * b).sqrt()
        } else {
            0.5 * (a + b)
        }
    };
    // `below` has coherence < target, `above` has coherence >= target.
    let (mut below, mut above) = if c_hi >= c_lo { (lo, hi) } else { (hi, lo) };
    let slack = 1e-12;
    for _ in 0..1000 {
        let width = (above - below).abs() / above.abs().max(below.abs());
        if width < THRESHOLD_REL_TOL {
            return Ok(Threshold::Reached(midpoint(below, above)));
        }
        let mid = midpoint(below, above);
        let c = eval(mid)?;
        if c < c_min - slack || c > c_max + slack {
            return Err(Error::NonMonotone { lo, hi });
        }
        if c >= target {
            above = mid;
        } else {
            below = mid;
        }
    }
    Err(Error::NumericalBreakdown(
        "threshold bisection did not reach the requested width".into(),
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Asymptote {
    pub ladder: Vec<f64>,
    pub values: Vec<f64>,
    pub plateau: f64,
    pub is_plateau: bool,
}

/// Evaluates the coherence of `family` along a ladder of thermal photon numbers.
pub fn asymptote(
    family: Family,
    params: &FamilyParams,
    m: Measure,
    ladder: &[f64],
    opts: &OptimizerOptions,
) -> Result<Asymptote> {
    if ladder.len() < 4 {
        return Err(Error::InvalidLadder(format!(
            "need at least 4 points, got {}",
            ladder.len()
        )));
    }
    if ladder.iter().any(|n| !n.is_finite() || *n < 0.0) {
        return Err(Error::InvalidLadder("values must be finite and non-negative".into()));
    }
    if ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidLadder("values must be strictly increasing".into()));
    }
    let values = ladder
        .iter()
        .map(|&n| {
            let state = family.state(&params.with(Param::NTh, n)?)?;
            Ok(coherence(&state, m, opts)?.value)
        })
        .collect::<Result<Vec<_>>>()?;
    let k = values.len();
    Ok(Asymptote {
        ladder: ladder.to_vec(),
        plateau: values[k - 1],
        is_plateau: (values[k - 1] - values[k - 2]).abs() < PLATEAU_TOL,
        values,
    })
}

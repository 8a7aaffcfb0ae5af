//! Cross-checks the closed-form fidelity and affinity against spectral values
//! computed on truncated Fock densities.

use rayon::prelude::*;

use super::density::{gaussian_unitary, thermal_density};
use super::spectral::{affinity_fock, converged_values, uhlmann_fidelity};
use super::TruncationSpec;
use crate::error::Result;
use crate::metrics::{affinity, fidelity};
use crate::state::{from_params, thermal_state, ComplexAmplitude, StateParams};

/// Grid of states compared against thermal references.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleGrid {
    /// Real displacement amplitudes.
    pub beta: Vec<f64>,
    pub r: Vec<f64>,
    pub psi: Vec<f64>,
    pub n_th: Vec<f64>,
    /// Thermal occupations of the reference states.
    pub references: Vec<f64>,
}

impl OracleGrid {
    /// 4 x 3 x 2 x 3 = 72 states, each against thermal references n in {0, 1, 2}.
    pub fn standard() -> Self {
        Self {
            beta: vec![0.0, 0.5, 1.0, 2.0],
            r: vec![0.0, 0.3, 1.0],
            psi: vec![0.0, std::f64::consts::FRAC_PI_2],
            n_th: vec![0.0, 1.0, 2.0],
            references: vec![0.0, 1.0, 2.0],
        }
    }

    /// Thermal states only.
    pub fn thermal() -> Self {
        Self {
            beta: vec![0.0],
            r: vec![0.0],
            psi: vec![0.0],
            n_th: vec![0.0, 1.0, 2.0],
            references: vec![0.0, 1.0, 2.0],
        }
    }

    pub fn states(&self) -> Vec<StateParams> {
        let mut out = Vec::new();
        for &beta in &self.beta {
            for &r in &self.r {
                for &psi in &self.psi {
                    for &n_th in &self.n_th {
                        out.push(StateParams::new(ComplexAmplitude::real(beta), r, psi, n_th));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleComparison {
    pub state: StateParams,
    pub reference_n: f64,
    pub fidelity_closed: f64,
    pub fidelity_oracle: f64,
    pub affinity_closed: f64,
    pub affinity_oracle: f64,
    /// Fock dimension at which the oracle values converged.
    pub dim: usize,
}

impl OracleComparison {
    pub fn fidelity_deviation(&self) -> f64 {
        (self.fidelity_closed - self.fidelity_oracle).abs()
    }

    pub fn affinity_deviation(&self) -> f64 {
        (self.affinity_closed - self.affinity_oracle).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub comparisons: Vec<OracleComparison>,
}

impl OracleReport {
    pub fn max_fidelity_deviation(&self) -> f64 {
        self.comparisons
            .iter()
            .map(OracleComparison::fidelity_deviation)
            .fold(0.0, f64::max)
    }

    pub fn max_affinity_deviation(&self) -> f64 {
        self.comparisons
            .iter()
            .map(OracleComparison::affinity_deviation)
            .fold(0.0, f64::max)
    }

    pub fn max_dim(&self) -> usize {
        self.comparisons.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn worst_affinity(&self) -> Option<&OracleComparison> {
        self.comparisons
            .iter()
            .max_by(|a, b| a.affinity_deviation().total_cmp(&b.affinity_deviation()))
    }
}

/// Evaluates every grid state against every reference. States sharing the
/// same displacement and squeezing reuse one unitary per dimension; the
/// squeezing phase is irrelevant when `r = 0`, so those states are computed once.
pub fn run_oracle_suite(grid: &OracleGrid, spec: &TruncationSpec) -> Result<OracleReport> {
    spec.validate()?;
    let states = grid.states();

    let mut groups: Vec<(f64, f64, f64)> = Vec::new();
    for s in &states {
        let key = (s.beta.re, s.r, if s.r == 0.0 { 0.0 } else { s.psi });
        if !groups.contains(&key) {
            groups.push(key);
        }
    }

    type GroupValues = ((f64, f64, f64), Vec<f64>, usize);
    let oracle: Vec<GroupValues> = groups
        .par_iter()
        .map(|&(beta, r, psi)| {
            let c = converged_values(
                |spec| {
                    let u = gaussian_unitary(
                        &StateParams::new(ComplexAmplitude::real(beta), r, psi, 0.0),
                        spec,
                    )?;
                    let refs = grid
                        .references
                        .iter()
                        .map(|&n| thermal_density(n, spec))
                        .collect::<Result<Vec<_>>>()?;
                    let mut values = Vec::with_capacity(2 * grid.n_th.len() * refs.len());
                    for &n in &grid.n_th {
                        let rho = thermal_density(n, spec)?.conjugated(&u)?;
                        for nu in &refs {
                            values.push(uhlmann_fidelity(nu, &rho)?);
                            values.push(affinity_fock(&rho, nu)?);
                        }
                    }
                    Ok(values)
                },
                spec,
            )?;
            Ok(((beta, r, psi), c.value, c.dim))
        })
        .collect::<Result<_>>()?;

    let mut comparisons = Vec::with_capacity(states.len() * grid.references.len());
    for s in states {
        let key = (s.beta.re, s.r, if s.r == 0.0 { 0.0 } else { s.psi });
        let (_, values, dim) = oracle.iter().find(|(k, _, _)| *k == key).expect("group computed");
        let n_idx = grid.n_th.iter().position(|&n| n == s.n_th).expect("n_th on grid");
        let gaussian = from_params(&s)?;
        for (k, &reference_n) in grid.references.iter().enumerate() {
            let thermal = thermal_state(reference_n)?;
            let at = 2 * (n_idx * grid.references.len() + k);
            comparisons.push(OracleComparison {
                state: s,
                reference_n,
                fidelity_closed: fidelity(&gaussian, &thermal)?,
                fidelity_oracle: values[at],
                affinity_closed: affinity(&gaussian, &thermal)?,
                affinity_oracle: values[at + 1],
                dim: *dim,
            });
        }
    }
    Ok(OracleReport { comparisons })
}

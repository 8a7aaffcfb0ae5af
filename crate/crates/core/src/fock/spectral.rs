use super::density::FockDensity;
use super::linalg::{matmul, singular_values, CMatrix, C64};
use super::TruncationSpec;
use crate::error::{Error, Result};

/// Two dims agree when every value differs by less than this.
pub const CONVERGENCE_TOL: f64 = 1e-7;

/// Allowed imaginary part of `Tr[sqrt(rho) sqrt(sigma)]`.
pub const IMAGINARY_TOL: f64 = 1e-10;

fn same_dim(rho: &FockDensity, sigma: &FockDensity) -> Result<()> {
    if rho.dim() == sigma.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        })
    }
}

/// `(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`.
///
/// The trace equals the sum of singular values of `sqrt(sigma) sqrt(rho)`;
/// both roots come from Hermitian eigendecompositions. Summing singular values
/// avoids taking square roots of the near-zero eigenvalues of
/// `sqrt(rho) sigma sqrt(rho)`, whose rounding noise would otherwise dominate.
pub fn uhlmann_fidelity(rho: &FockDensity, sigma: &FockDensity) -> Result<f64> {
    same_dim(rho, sigma)?;
    let (root_rho, root_sigma) = (rho.sqrt()?, sigma.sqrt()?);
    let product = match (sigma.is_diagonal(), rho.is_diagonal()) {
        (true, _) => CMatrix::from_fn(rho.dim(), rho.dim(), |i, j| {
            root_rho[(i, j)] * root_sigma[(i, i)].re
        }),
        (false, true) => CMatrix::from_fn(rho.dim(), rho.dim(), |i, j| {
            root_sigma[(i, j)] * root_rho[(j, j)].re
        }),
        (false, false) => matmul(root_sigma, root_rho),
    };
    let trace: f64 = singular_values(&product).iter().sum();
    Ok(trace * trace)
}

/// `Tr[sqrt(rho) sqrt(sigma)]`.
pub fn affinity_fock(rho: &FockDensity, sigma: &FockDensity) -> Result<f64> {
    same_dim(rho, sigma)?;
    let (a, b) = (rho.sqrt()?, sigma.sqrt()?);
    let n = rho.dim();
    let mut tr = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            tr += a[(i, j)] * b[(j, i)];
        }
    }
    if tr.im.abs() > IMAGINARY_TOL {
        return Err(Error::ImaginaryResidue(tr.im));
    }
    Ok(tr.re)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Converged<T> {
    pub value: T,
    /// Dimension the accepted value was computed at.
    pub dim: usize,
    /// Largest difference between the last two dims tried.
    pub difference: f64,
}

/// Runs `computation` at `dim` and `2 dim` and accepts when every component
/// agrees to [`CONVERGENCE_TOL`]; otherwise retries once at `4 dim`.
/// Errors from the computation itself (e.g. a thermal tail that does not fit)
/// are returned unchanged.
pub fn converged_values<F>(computation: F, spec: &TruncationSpec) -> Result<Converged<Vec<f64>>>
where
    F: Fn(&TruncationSpec) -> Result<Vec<f64>>,
{
    spec.validate()?;
    let diff = |x: &[f64], y: &[f64]| {
        x.iter()
            .zip(y)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    };
    let mut previous = computation(spec)?;
    let mut dims = vec![spec.dim];
    let mut difference = f64::INFINITY;
    for factor in [2, 4] {
        let s = spec.with_dim(spec.dim * factor);
        let current = computation(&s)?;
        dims.push(s.dim);
        difference = diff(&previous, &current);
        if difference < CONVERGENCE_TOL {
            return Ok(Converged {
                value: current,
                dim: s.dim,
                difference,
            });
        }
        previous = current;
    }
    Err(Error::NotConverged { difference, dims })
}

pub fn converged_value<F>(computation: F, spec: &TruncationSpec) -> Result<Converged<f64>>
where
    F: Fn(&TruncationSpec) -> Result<f64>,
{
    let c = converged_values(|s| computation(s).map(|v| vec![v]), spec)?;
    Ok(Converged {
        value: c.value[0],
        dim: c.dim,
        difference: c.difference,
    })
}

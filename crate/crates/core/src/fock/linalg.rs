//! Dense complex linear algebra for the Fock-space oracle.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Eigenvalues below `-NEGATIVITY_TOL` make a density matrix invalid.
pub const NEGATIVITY_TOL: f64 = 1e-10;

const EXPM_SCALE_TARGET: f64 = 0.5;
const EXPM_MAX_TERMS: usize = 60;

fn split(m: &CMatrix) -> (DMatrix<f64>, DMatrix<f64>) {
    (m.map(|z| z.re), m.map(|z| z.im))
}

/// Complex product through four real GEMMs, which are much faster in
/// nalgebra than the generic complex kernel.
pub fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows(), "matmul shape mismatch");
    let (ar, ai) = split(a);
    let (br, bi) = split(b);
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, C64::new)
}

pub fn norm1(m: &CMatrix) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn is_real(m: &CMatrix) -> bool {
    m.iter().all(|z| z.im == 0.0)
}

pub fn is_diagonal(m: &CMatrix) -> bool {
    let n = m.nrows();
    (0..n).all(|j| (0..n).all(|i| i == j || m[(i, j)] == C64::new(0.0, 0.0)))
}

/// Matrix exponential by scaling and squaring with a truncated Taylor kernel.
pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");
    let norm = norm1(a);
    if !norm.is_finite() {
        return Err(Error::ExpmNonConvergence);
    }
    let squarings = if norm > EXPM_SCALE_TARGET {
        (norm / EXPM_SCALE_TARGET).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.map(|z| z / 2f64.powi(squarings as i32));

    let mut sum = CMatrix::identity(n, n);
    let mut term = CMatrix::identity(n, n);
    let mut converged = false;
    for k in 1..=EXPM_MAX_TERMS {
        term = matmul(&term, &scaled).map(|z| z / k as f64);
        sum += &term;
        if norm1(&term) <= f64::EPSILON * 1e-2 * norm1(&sum) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ExpmNonConvergence);
    }
    for _ in 0..squarings {
        sum = matmul(&sum, &sum);
    }
    if sum.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::ExpmNonConvergence);
    }
    Ok(sum)
}

/// Zeroes entries below `eps^2` relative to the largest one. Fock-basis
/// entries decay factorially, and Householder norms over such tails underflow
/// until the eigensolver returns NaN. Entries this small cannot move any
/// eigenvalue by more than rounding.
fn flush_tiny(m: &CMatrix) -> CMatrix {
    let cutoff = f64::EPSILON * f64::EPSILON * max_abs(m);
    m.map(|z| if z.norm() < cutoff { C64::new(0.0, 0.0) } else { z })
}

/// Eigen-decomposition of a Hermitian matrix; the imaginary part of the
/// input is trusted to be antisymmetric and only the lower triangle is used.
/// Eigenvalues are unsorted.
pub fn hermitian_eigen(m: &CMatrix) -> (DVector<f64>, CMatrix) {
    let n = m.nrows();
    let m = &flush_tiny(m);
    if is_diagonal(m) {
        return (
            DVector::from_iterator(n, (0..n).map(|i| m[(i, i)].re)),
            CMatrix::identity(n, n),
        );
    }
    if is_real(m) {
        let eig = SymmetricEigen::new(m.map(|z| z.re));
        return (eig.eigenvalues, eig.eigenvectors.map(|v| C64::new(v, 0.0)));
    }
    let eig = SymmetricEigen::new(m.clone());
    (eig.eigenvalues, eig.eigenvectors)
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> DVector<f64> {
    let n = m.nrows();
    let m = &flush_tiny(m);
    if is_diagonal(m) {
        return DVector::from_iterator(n, (0..n).map(|i| m[(i, i)].re));
    }
    if is_real(m) {
        return m.map(|z| z.re).symmetric_eigenvalues();
    }
    m.clone().symmetric_eigenvalues()
}

/// `(M + M^dag) / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).map(|z| z * 0.5)
}

/// Singular values, through the real routine when the matrix is real.
pub fn singular_values(m: &CMatrix) -> DVector<f64> {
    if is_real(m) {
        m.map(|z| z.re).singular_values()
    } else {
        m.clone().singular_values()
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues below `-NEGATIVITY_TOL` are an error. Eigenvalues at or below
/// the rounding floor `dim * eps * max(lambda)` are set to zero: their
/// computed values are noise, and the square root would amplify that noise
/// from ~1e-16 to ~1e-8.
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let (values, vectors) = hermitian_eigen(m);
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NumericalBreakdown("non-finite eigenvalue".into()));
    }
    let min = values.min();
    if min < -NEGATIVITY_TOL {
        return Err(Error::NegativeEigenvalue(min));
    }
    if is_diagonal(&flush_tiny(m)) {
        return Ok(CMatrix::from_diagonal(
            &values.map(|v| C64::new(v.max(0.0).sqrt(), 0.0)),
        ));
    }
    let floor = m.nrows() as f64 * f64::EPSILON * values.max().max(0.0);
    let mut scaled = vectors.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        let v = if values[j] > floor { values[j].sqrt() } else { 0.0 };
        col *= C64::new(v, 0.0);
    }
    Ok(hermitian_part(&matmul(&scaled, &vectors.adjoint())))
}

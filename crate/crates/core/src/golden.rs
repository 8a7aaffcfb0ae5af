//! Golden-section search for the maximum of a 1-D function on a bracket.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenMax {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Stops once `hi - lo <= width_tol(lo, hi)`, or once the four tracked values
/// span at most `value_tol`. `converged` is false if neither happened within
/// `max_iters` iterations. Assumes the function is unimodal on `[lo, hi]`.
pub fn maximize<F, W>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    width_tol: W,
    value_tol: f64,
    max_iters: usize,
) -> GoldenMax
where
    F: FnMut(f64) -> f64,
    W: Fn(f64, f64) -> f64,
{
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evaluations = 4;
    let mut converged = false;

    for _ in 0..max_iters {
        if hi - lo <= width_tol(lo, hi) {
            converged = true;
            break;
        }
        let vmax = f_lo.max(f_hi).max(f1).max(f2);
        let vmin = f_lo.min(f_hi).min(f1).min(f2);
        if vmax - vmin <= value_tol {
            converged = true;
            break;
        }
        if f1 >= f2 {
            hi = x2;
            f_hi = f2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            f_lo = f1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        evaluations += 1;
    }

    let (x, value) = [(lo, f_lo), (x1, f1), (x2, f2), (hi, f_hi)]
        .into_iter()
        .fold((lo, f64::NEG_INFINITY), |best, cand| {
            if cand.1 > best.1 {
                cand
            } else {
                best
            }
        });
    GoldenMax {
        x,
        value,
        evaluations,
        converged,
    }
}

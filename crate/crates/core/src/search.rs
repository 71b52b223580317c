//! One-dimensional bracketed minimization and root finding.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the minimum of `f` on `[lo, hi]`.
///
/// Returns `(x_min, f_min)`. Boundary minima converge to the boundary.
pub fn golden_section_min(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, f64)> {
    if tol.is_nan() || tol <= 0.0 || !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::Domain(format!(
            "bad bracket [{lo}, {hi}] or tolerance {tol}"
        )));
    }
    if hi - lo <= tol {
        let x = 0.5 * (lo + hi);
        return Ok((x, f(x)));
    }
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iter {
        if hi - lo <= tol {
            return if f1 < f2 { Ok((x1, f1)) } else { Ok((x2, f2)) };
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    Err(Error::OptimizerStalled {
        lower: lo,
        upper: hi,
        iterations: max_iter,
    })
}

/// Bisection root of `f` on `[lo, hi]`; the endpoints must bracket a sign
/// change (an endpoint value of zero counts).
pub fn bisect_root(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 || lo > hi {
        return Err(Error::Domain(format!(
            "bad bracket [{lo}, {hi}] or tolerance {tol}"
        )));
    }
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Domain(format!(
            "no sign change on [{lo}, {hi}]: f(lo) = {flo}, f(hi) = {fhi}"
        )));
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Err(Error::OptimizerStalled {
        lower: lo,
        upper: hi,
        iterations: max_iter,
    })
}

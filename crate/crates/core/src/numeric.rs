use crate::error::{Error, Result};

pub(crate) const MAX_BISECTION_ITERATIONS: usize = 200;

/// Root of a nondecreasing `f` on `[lo, hi]` with `f(lo) <= 0 <= f(hi)`.
///
/// Stops once `|f(x)| <= tol` or the bracket can no longer be split.
pub(crate) fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let f_lo = f(lo);
    if f_lo.abs() <= tol {
        return Ok(lo);
    }
    let f_hi = f(hi);
    if f_hi.abs() <= tol {
        return Ok(hi);
    }
    for _ in 0..MAX_BISECTION_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let value = f(mid);
        if value.abs() <= tol {
            return Ok(mid);
        }
        if value < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::ConvergenceFailure {
        iterations: MAX_BISECTION_ITERATIONS,
    })
}

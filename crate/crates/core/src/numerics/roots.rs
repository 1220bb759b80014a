use crate::error::{Error, Result};

/// Default bracket width at which bisection stops.
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 200;

/// Bisection settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for Bisection {
    fn default() -> Self {
        Bisection {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl Bisection {
    pub fn with_tol(tol: f64) -> Self {
        Bisection {
            tol,
            ..Default::default()
        }
    }

    /// Finds a root of `f` in `[lo, hi]`.
    ///
    /// `f(lo)` and `f(hi)` must differ in sign, or one of them must be zero.
    /// Stops once the bracket is no wider than `tol`, when `f` hits exactly
    /// zero, or when the bracket can no longer be split in floating point.
    pub fn solve<F>(&self, mut f: F, lo: f64, hi: f64) -> Result<f64>
    where
        F: FnMut(f64) -> f64,
    {
        let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let f_lo = f(lo);
        if f_lo == 0.0 {
            return Ok(lo);
        }
        let f_hi = f(hi);
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if f_lo.is_nan() || f_hi.is_nan() || f_lo.signum() == f_hi.signum() {
            return Err(Error::Bracket { lo, hi, f_lo, f_hi });
        }
        let lo_negative = f_lo < 0.0;
        for _ in 0..self.max_iter {
            if hi - lo <= self.tol {
                return Ok(0.5 * (lo + hi));
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(mid);
            }
            let f_mid = f(mid);
            if f_mid == 0.0 {
                return Ok(mid);
            }
            if (f_mid < 0.0) == lo_negative {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if hi - lo <= self.tol {
            return Ok(0.5 * (lo + hi));
        }
        Err(Error::NonConvergence {
            iterations: self.max_iter,
        })
    }
}

/// Bisection with the default settings.
pub fn bisect<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    Bisection::with_tol(tol).solve(f, lo, hi)
}

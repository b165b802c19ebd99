//! Bracketed root finding: bisection with a guarded secant step.

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    /// `F(root)`.
    pub residual: f64,
    pub bracket_width_final: f64,
    pub iterations: usize,
}

/// Root of a continuous `f` on `[lo, hi]` given a sign change at the ends.
pub fn bisect_root(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    residual_tol: f64,
    width_tol: f64,
) -> Result<RootResult> {
    try_bisect_root(|x| Ok(f(x)), lo, hi, residual_tol, width_tol)
}

/// As [`bisect_root`] for functions whose evaluation can fail.
///
/// Every iteration takes one secant step when it lands strictly inside the
/// current bracket, then halves the bracket, so the width at least halves
/// per iteration regardless of how the secant behaves.
pub fn try_bisect_root(
    mut f: impl FnMut(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    residual_tol: f64,
    width_tol: f64,
) -> Result<RootResult> {
    if lo >= hi || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::input(format!("root bracket needs lo < hi, got [{lo}, {hi}]")));
    }
    let done = |root: f64, residual: f64, width: f64, iterations: usize| {
        Ok(RootResult { root, residual, bracket_width_final: width, iterations })
    };
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::NoSignChange { lo, hi, flo: fa, fhi: fb });
    }
    if fa.abs() <= residual_tol {
        return done(a, fa, b - a, 0);
    }
    if fb.abs() <= residual_tol {
        return done(b, fb, b - a, 0);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo, hi, flo: fa, fhi: fb });
    }

    for it in 1..=MAX_ITERATIONS {
        let s = b - fb * (b - a) / (fb - fa);
        if s > a && s < b {
            let fs = f(s)?;
            if fs.abs() <= residual_tol {
                return done(s, fs, b - a, it);
            }
            if fs.signum() == fa.signum() {
                (a, fa) = (s, fs);
            } else {
                (b, fb) = (s, fs);
            }
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            // bracket is down to adjacent floats
            let fm = f(m)?;
            return done(m, fm, b - a, it);
        }
        let fm = f(m)?;
        if fm.abs() <= residual_tol {
            return done(m, fm, b - a, it);
        }
        if fm.signum() == fa.signum() {
            (a, fa) = (m, fm);
        } else {
            (b, fb) = (m, fm);
        }
        if b - a <= width_tol {
            let m = 0.5 * (a + b);
            return done(m, f(m)?, b - a, it);
        }
    }
    Err(Error::IterationCap(MAX_ITERATIONS))
}

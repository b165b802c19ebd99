//! Brute-force midpoint sums used as an independent check on the adaptive
//! quadrature. Every sample goes through the function's public evaluator.

use crate::error::{Error, Result};
use crate::funcexpr::Segmented;

use super::quad::VANISHING_WEIGHT;

/// Signed midpoint-rule sum of `f` (or `f / g`) over `n_cells` uniform cells.
pub fn riemann_oracle<F, G>(f: &F, g: Option<&G>, a: f64, b: f64, n_cells: usize) -> Result<f64>
where
    F: Segmented + ?Sized,
    G: Segmented + ?Sized,
{
    if n_cells == 0 {
        return Err(Error::input("riemann_oracle needs at least one cell"));
    }
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    for x in [lo, hi] {
        f.check_in_domain(x)?;
        if let Some(g) = g {
            g.check_in_domain(x)?;
        }
    }
    let h = (hi - lo) / n_cells as f64;
    let (mut sum, mut c) = (0.0f64, 0.0f64);
    for i in 0..n_cells {
        let x = lo + (i as f64 + 0.5) * h;
        let mut v = f.eval(x)?;
        if let Some(g) = g {
            let w = g.eval(x)?;
            if w.abs() <= VANISHING_WEIGHT {
                return Err(Error::VanishingWeight(x));
            }
            v /= w;
        }
        // Kahan
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    Ok(sign * sum * h)
}

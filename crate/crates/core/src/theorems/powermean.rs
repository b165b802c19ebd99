use super::report::{InequalityReport, TheoremId};
use crate::error::{Error, Result};
use crate::numerics::{check_odd, odd_power, try_bisect_root};
use crate::Tolerances;

fn check_exponent(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::input(format!("exponent {name} must be finite")));
    }
    if value == 0.0 || value == -1.0 {
        return Err(Error::ExcludedExponent { name, value });
    }
    Ok(())
}

fn sorted_positive(xs: &[f64]) -> Result<Vec<f64>> {
    if xs.is_empty() {
        return Err(Error::input("need at least one value"));
    }
    if let Some(x) = xs.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::input(format!("values must be positive and finite, got {x}")));
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

fn power_sum(xs: &[f64], p: f64, x0: f64, k: u32) -> f64 {
    let base = x0.powf(p);
    xs.iter().map(|x| odd_power(x.powf(p) - base, k)).sum()
}

/// `x0 > 0` with `sum_i (x_i^b - x0^b)^k = 0`, bracketed by `[min x, max x]`.
pub fn powermean_solve(xs: &[f64], b: f64, k: u32, tol: &Tolerances) -> Result<f64> {
    check_exponent("b", b)?;
    check_odd(k)?;
    let xs = sorted_positive(xs)?;
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    if lo == hi {
        return Ok(lo);
    }
    let r = try_bisect_root(|y| Ok(power_sum(&xs, b, y, k)), lo, hi, tol.residual, tol.width_rel * (hi - lo))?;
    Ok(r.root)
}

/// Checks `sum_i (x_i^a - x0^a)^k >= 0` for `a >= b` (`<= 0` for `a < b`)
/// at the `b`-balance point.
///
/// The stated power form is tested as is. For negative `a` the integral form
/// it comes from carries a factor `1/a^k`, and the stated direction is
/// observed to fail; such violations are logged and reported, not corrected.
pub fn powermean_verify(xs: &[f64], a: f64, b: f64, k: u32, tol: &Tolerances) -> Result<InequalityReport> {
    check_exponent("a", a)?;
    let x0 = powermean_solve(xs, b, k, tol)?;
    let xs = sorted_positive(xs)?;
    let lhs = power_sum(&xs, a, x0, k);
    let rep = InequalityReport::new(TheoremId::PowerMean, lhs, 0.0, tol.verdict, a < b, k).at(x0);
    if !rep.satisfied {
        log::warn!(
            "power-mean form violated: a = {a}, b = {b}, k = {k}, sum = {lhs:e}{}",
            if a < 0.0 { " (negative a)" } else { "" }
        );
    }
    Ok(rep)
}

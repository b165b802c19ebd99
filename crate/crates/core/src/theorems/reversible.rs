use super::preconditions::{check_k, require_positive, weight_direction};
use super::report::{EquilibriumResult, InequalityReport, TheoremId};
use super::system::BlockSystem;
use crate::error::{Error, Result};
use crate::funcexpr::{Monotonicity, ScalarFunction, Segmented};
use crate::numerics::{kfold_identical, try_bisect_root};
use crate::Tolerances;

/// `F(y) = sum_i (int_y^{x_i} f_i / w)^k`, with `w = 1` when `weight` is `None`.
pub(crate) fn balance(
    xs: &[f64],
    caps: &[&dyn Segmented],
    weight: Option<&dyn Segmented>,
    y: f64,
    k: u32,
    quad_tol: f64,
) -> Result<f64> {
    let mut sum = 0.0;
    for (x, f) in xs.iter().zip(caps) {
        sum += kfold_identical(*f, weight, y, *x, k, quad_tol)?;
    }
    Ok(sum)
}

/// Root of the balance functional on `[x_1, x_n]`. `xs` must be sorted.
pub(crate) fn balance_root(
    xs: &[f64],
    caps: &[&dyn Segmented],
    weight: Option<&dyn Segmented>,
    k: u32,
    tol: &Tolerances,
) -> Result<EquilibriumResult> {
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    if lo == hi {
        return Ok(EquilibriumResult { x0: lo, residual: 0.0, bracket: (lo, hi), iterations: 0 });
    }
    let f = |y: f64| balance(xs, caps, weight, y, k, tol.quad);
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    if f_lo < -tol.residual || f_hi > tol.residual {
        return Err(Error::SignConditions { f_lo, f_hi });
    }
    let r = try_bisect_root(f, lo, hi, tol.residual, tol.width_rel * (hi - lo))?;
    Ok(EquilibriumResult { x0: r.root, residual: r.residual, bracket: (lo, hi), iterations: r.iterations })
}

pub(crate) fn capacity_refs(sys: &BlockSystem) -> Vec<&dyn Segmented> {
    (0..sys.len()).map(|i| sys.capacity(i) as &dyn Segmented).collect()
}

fn validate(sys: &BlockSystem, g: &ScalarFunction, k: u32) -> Result<Monotonicity> {
    check_k(k)?;
    let (lo, hi) = sys.span();
    for i in 0..sys.len() {
        require_positive(sys.capacity(i), lo, hi, "capacity f")?;
        if matches!(sys.capacities(), super::Capacities::Shared(_)) {
            break;
        }
    }
    weight_direction(g, lo, hi)
}

/// `x0` in `[x_1, x_n]` with `sum_i (int_{x0}^{x_i} f_i / g)^k = 0`.
pub fn solve_equilibrium(sys: &BlockSystem, g: &ScalarFunction, k: u32, tol: &Tolerances) -> Result<EquilibriumResult> {
    validate(sys, g, k)?;
    balance_root(sys.xs(), &capacity_refs(sys), Some(g), k, tol)
}

/// Checks `sum_i (int_{x0}^{x_i} f_i)^k >= 0` at the balance point, or `<= 0`
/// when `g` is non-increasing.
pub fn verify_reversible(sys: &BlockSystem, g: &ScalarFunction, k: u32, tol: &Tolerances) -> Result<InequalityReport> {
    let direction = validate(sys, g, k)?;
    let caps = capacity_refs(sys);
    let eq = balance_root(sys.xs(), &caps, Some(g), k, tol)?;
    let lhs = balance(sys.xs(), &caps, None, eq.x0, k, tol.quad)?;
    let flipped = direction == Monotonicity::NonIncreasing;
    Ok(InequalityReport::new(TheoremId::Reversible, lhs, 0.0, tol.verdict, flipped, k).at(eq.x0))
}

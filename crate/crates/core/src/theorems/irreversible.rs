use super::preconditions::{check_k, require_positive, weight_direction};
use super::report::{InequalityReport, TheoremId};
use super::reversible::capacity_refs;
use super::system::{BlockSystem, Capacities};
use crate::error::{Error, Result};
use crate::funcexpr::{Monotonicity, ScalarFunction, Segmented};
use crate::numerics::{kfold_identical, odd_power};
use crate::Tolerances;

/// Checks, for an arbitrary positive `x0`,
///
/// ```text
/// sum_i (int_{x0}^{x_i} f_i)^k / g(x0)^k  >=  sum_i (int_{x0}^{x_i} f_i / g)^k
/// ```
///
/// with the direction reversed for a non-increasing `g`. Each capacity only
/// has to be defined between `x0` and its own `x_i`.
pub fn verify_irreversible(
    sys: &BlockSystem,
    g: &ScalarFunction,
    x0: f64,
    k: u32,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    check_k(k)?;
    if !(x0.is_finite() && x0 > 0.0) {
        return Err(Error::input(format!("x0 must be positive and finite, got {x0}")));
    }
    let (x1, xn) = sys.span();
    match sys.capacities() {
        Capacities::Shared(f) => require_positive(f, x0.min(x1), x0.max(xn), "capacity f")?,
        Capacities::PerBlock(fs) => {
            for (f, &xi) in fs.iter().zip(sys.xs()) {
                require_positive(f, x0.min(xi), x0.max(xi), "capacity f_i")?;
            }
        }
    }
    let direction = weight_direction(g, x0.min(x1), x0.max(xn))?;
    let caps = capacity_refs(sys);
    let frozen = odd_power(g.eval(x0)?, k);

    let (mut plain, mut weighted) = (0.0, 0.0);
    for (f, &xi) in caps.iter().zip(sys.xs()) {
        plain += kfold_identical(*f, None::<&dyn Segmented>, x0, xi, k, tol.quad)?;
        weighted += kfold_identical(*f, Some(g), x0, xi, k, tol.quad)?;
    }
    let flipped = direction == Monotonicity::NonIncreasing;
    Ok(InequalityReport::new(TheoremId::Irreversible, plain / frozen, weighted, tol.verdict, flipped, k).at(x0))
}

use super::preconditions::require_positive;
use super::report::{InequalityReport, TheoremId};
use super::reversible::{balance, balance_root};
use crate::error::{Error, Result};
use crate::funcexpr::{check_derivative_positive_on, ScalarFunction, Segmented, DEFAULT_GRID};
use crate::Tolerances;

/// Two routes must agree to this absolute tolerance.
pub const ROUTE_AGREEMENT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JensenReport {
    /// Direct check: `mean h(y_j)` against `h(mean y_j)`.
    pub report: InequalityReport,
    pub mean: f64,
    /// Balance point with `f = g = h'`; should equal the arithmetic mean.
    pub x0: f64,
    /// `(1/m) sum_j int_{x0}^{y_j} h'`, the same margin by quadrature.
    pub margin_by_balance: f64,
    pub routes_agree: bool,
}

/// Verifies `mean h(y) >= h(mean y)` for `h' > 0, h'' > 0`, and recomputes the
/// margin by solving the balance problem with `f = g = h'`.
pub fn jensen_verify(h: &ScalarFunction, ys: &[f64], tol: &Tolerances) -> Result<JensenReport> {
    if ys.is_empty() {
        return Err(Error::input("jensen_verify needs at least one point"));
    }
    if let Some(y) = ys.iter().find(|y| !(y.is_finite() && **y > 0.0)) {
        return Err(Error::input(format!("points must be positive and finite, got {y}")));
    }
    let mut xs = ys.to_vec();
    xs.sort_by(f64::total_cmp);
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    for order in [1, 2] {
        let rep = check_derivative_positive_on(h, order, lo, hi, DEFAULT_GRID);
        if !rep.verdict {
            return Err(Error::Precondition(Box::new(rep)));
        }
    }

    let m = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / m;
    let lhs = xs.iter().map(|&y| h.eval(y)).sum::<Result<f64>>()? / m;
    let rhs = h.eval(mean)?;
    let report = InequalityReport::new(TheoremId::Jensen, lhs, rhs, tol.verdict, false, 1);

    let dh = h.derivative_fn(1);
    require_positive(&dh, lo, hi, "h'")?;
    let caps = vec![&dh as &dyn Segmented; xs.len()];
    let eq = balance_root(&xs, &caps, Some(&dh), 1, tol)?;
    let margin_by_balance = balance(&xs, &caps, None, eq.x0, 1, tol.quad)? / m;

    let routes_agree =
        (margin_by_balance - report.margin).abs() <= ROUTE_AGREEMENT && (eq.x0 - mean).abs() <= ROUTE_AGREEMENT;
    Ok(JensenReport { report: report.at(mean), mean, x0: eq.x0, margin_by_balance, routes_agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::parse_function;

    fn fx(t: &str) -> ScalarFunction {
        parse_function(t, None).unwrap()
    }

    #[test]
    fn exp_example() {
        let r = jensen_verify(&fx("exp(x)"), &[1.0, 3.0], &Tolerances::default()).unwrap();
        let lhs = (1f64.exp() + 3f64.exp()) / 2.0;
        assert!((r.report.lhs - lhs).abs() < 1e-12);
        assert!((r.report.lhs - 11.40191).abs() < 1e-5);
        assert!((r.report.rhs - 7.38906).abs() < 1e-5);
        assert!(r.report.satisfied && r.routes_agree);
        assert!((r.x0 - 2.0).abs() < 1e-8);
    }

    #[test]
    fn square_example() {
        let r = jensen_verify(&fx("x^2"), &[3.0, 1.0, 2.0], &Tolerances::default()).unwrap();
        assert!((r.report.lhs - 14.0 / 3.0).abs() < 1e-12);
        assert!((r.report.rhs - 4.0).abs() < 1e-12);
        assert!(r.routes_agree);
    }

    #[test]
    fn equal_points_have_zero_margin() {
        let r = jensen_verify(&fx("exp(x)"), &[1.5, 1.5, 1.5], &Tolerances::default()).unwrap();
        assert_eq!(r.report.margin, 0.0);
        assert!(r.routes_agree);
    }

    #[test]
    fn rejects_non_convex() {
        assert!(matches!(
            jensen_verify(&fx("log(x)"), &[1.0, 2.0], &Tolerances::default()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            jensen_verify(&fx("exp(-x)"), &[1.0, 2.0], &Tolerances::default()),
            Err(Error::Precondition(_))
        ));
        assert!(jensen_verify(&fx("x^2"), &[], &Tolerances::default()).is_err());
    }
}

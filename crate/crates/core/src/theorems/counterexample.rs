use crate::error::{Error, Result};

/// The `k = n = 2`, `f = g = z_1` balance equation
/// `2 x0^2 - 2 x0 (x1 + x2) + (x1^2 + x2^2) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CounterexampleReport {
    pub x1: f64,
    pub x2: f64,
    /// `(a, b, c)` of `a x0^2 + b x0 + c`.
    pub coefficients: (f64, f64, f64),
    /// `b^2 - 4ac` from the expanded coefficients.
    pub discriminant: f64,
    pub has_real_root: bool,
    /// The double root when `x1 == x2`.
    pub double_root: Option<f64>,
}

pub fn even_k_counterexample(x1: f64, x2: f64) -> Result<CounterexampleReport> {
    for x in [x1, x2] {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::input(format!("x1 and x2 must be positive and finite, got {x}")));
        }
    }
    let (a, b, c) = (2.0, -2.0 * (x1 + x2), x1 * x1 + x2 * x2);
    let discriminant = b * b - 4.0 * a * c;
    // the sign comes from the factored form -4 (x1 - x2)^2, which rounding cannot flip
    let has_real_root = x1 == x2;
    Ok(CounterexampleReport {
        x1,
        x2,
        coefficients: (a, b, c),
        discriminant,
        has_real_root,
        double_root: has_real_root.then_some(-b / (2.0 * a)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = even_k_counterexample(1.0, 2.0).unwrap();
        assert_eq!(r.discriminant, -4.0);
        assert!(!r.has_real_root);
        let r = even_k_counterexample(1.0, 3.0).unwrap();
        assert_eq!(r.discriminant, -16.0);
        let r = even_k_counterexample(2.5, 2.5).unwrap();
        assert_eq!(r.discriminant, 0.0);
        assert_eq!(r.double_root, Some(2.5));
        assert!(even_k_counterexample(0.0, 1.0).is_err());
    }
}

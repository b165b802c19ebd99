//! Random function families for property tests and parameter suites.
//!
//! Every generated function is built as text and parsed, so what a test draws
//! is exactly what a user could type.

use rand::Rng;

use crate::funcexpr::{parse_function, Monotonicity, ScalarFunction};

/// Positive on `(0, inf)`: positive-coefficient polynomials and exponentials
/// in `x / scale`, so values stay moderate for temperatures of order `scale`.
pub fn positive_capacity<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> ScalarFunction {
    let v = if scale == 1.0 { "x".to_string() } else { format!("(x/{scale:?})") };
    let text = match rng.gen_range(0..4) {
        0 => format!("{:?}", rng.gen_range(0.1..5.0)),
        1 => format!("{:?} + {:?}*{v}", rng.gen_range(0.1..3.0), rng.gen_range(0.0..2.0)),
        2 => format!(
            "{:?} + {:?}*{v} + {:?}*{v}^2",
            rng.gen_range(0.1..3.0),
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..0.5)
        ),
        _ => format!("{:?}*exp({:?}*{v})", rng.gen_range(0.1..3.0), rng.gen_range(-0.3..0.3)),
    };
    parse_function(&text, None).expect("generated capacity parses")
}

/// Positive and nondecreasing on `(0, inf)`.
pub fn increasing_weight<R: Rng + ?Sized>(rng: &mut R) -> ScalarFunction {
    let text = match rng.gen_range(0..3) {
        0 => format!("{:?} + x", rng.gen_range(0.0..2.0)),
        1 => format!("x^{:?}", rng.gen_range(0.3..2.0)),
        _ => format!("{:?}*exp({:?}*x)", rng.gen_range(0.5..2.0), rng.gen_range(0.01..0.3)),
    };
    parse_function(&text, None).expect("generated weight parses").declare_monotonicity(Monotonicity::NonDecreasing)
}

/// Positive and nonincreasing on `(0, inf)`.
pub fn decreasing_weight<R: Rng + ?Sized>(rng: &mut R) -> ScalarFunction {
    let text = match rng.gen_range(0..3) {
        0 => format!("1/({:?} + x)", rng.gen_range(0.1..2.0)),
        1 => format!("x^(-{:?})", rng.gen_range(0.3..2.0)),
        _ => format!("{:?}*exp(-{:?}*x)", rng.gen_range(0.5..2.0), rng.gen_range(0.01..0.3)),
    };
    parse_function(&text, None).expect("generated weight parses").declare_monotonicity(Monotonicity::NonIncreasing)
}

/// Positive step function on `[lo, hi]` with `steps` pieces of random height.
pub fn step_capacity<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64, steps: usize) -> ScalarFunction {
    let steps = steps.max(1);
    let mut cuts: Vec<f64> = (1..steps).map(|_| rng.gen_range(lo..hi)).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut pieces = vec![(lo, format!("{:?}", rng.gen_range(0.2..4.0)))];
    for c in cuts.into_iter().filter(|&c| c > lo) {
        pieces.push((c, format!("{:?}", rng.gen_range(0.2..4.0))));
    }
    let refs: Vec<(f64, &str)> = pieces.iter().map(|(a, s)| (*a, s.as_str())).collect();
    ScalarFunction::parse_piecewise(&refs, hi).expect("generated step function is valid")
}

/// `n` positions drawn uniformly from `[lo, hi]`, sorted.
pub fn positions<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut xs: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
    xs.sort_by(f64::total_cmp);
    xs
}

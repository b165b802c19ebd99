//! Adaptive Simpson quadrature over piecewise integrands.

use crate::error::{Error, Result};
use crate::funcexpr::Segmented;

pub const MAX_DEPTH: u32 = 60;

/// Intervals are never accepted above this depth, so a lucky three-point
/// agreement on the whole piece cannot end the refinement.
const MIN_DEPTH: u32 = 2;

/// Relative floor on the local error test; below it the Simpson difference is rounding noise.
const ROUNDOFF: f64 = 8.0 * f64::EPSILON;

/// A weight this close to zero is treated as vanishing.
pub const VANISHING_WEIGHT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    /// Number of interval bisections performed.
    pub subdivisions: usize,
    /// Number of interior breakpoints the interval was split at.
    pub breakpoints_split: usize,
}

impl QuadResult {
    fn zero() -> Self {
        QuadResult { value: 0.0, error_estimate: 0.0, subdivisions: 0, breakpoints_split: 0 }
    }

    fn negated(self) -> Self {
        QuadResult { value: -self.value, ..self }
    }
}

/// Signed integral of `f` from `a` to `b`.
pub fn integrate<F: Segmented + ?Sized>(f: &F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    oriented(a, b, tol, |lo, hi| {
        f.check_in_domain(lo)?;
        f.check_in_domain(hi)?;
        let cuts = split_points(lo, hi, &[f.breakpoints()]);
        let pieces: Vec<_> = cuts.windows(2).map(|w| (w[0], w[1], f.segment_of(0.5 * (w[0] + w[1])))).collect();
        let mut res = adaptive(&pieces, tol, |&seg, x| f.eval_segment(seg, x))?;
        res.breakpoints_split = cuts.len() - 2;
        Ok(res)
    })
}

/// Signed integral of `f / g` from `a` to `b`, split at the breakpoints of both.
pub fn integrate_ratio<F, G>(f: &F, g: &G, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Segmented + ?Sized,
    G: Segmented + ?Sized,
{
    oriented(a, b, tol, |lo, hi| {
        for x in [lo, hi] {
            f.check_in_domain(x)?;
            g.check_in_domain(x)?;
        }
        let cuts = split_points(lo, hi, &[f.breakpoints(), g.breakpoints()]);
        let pieces: Vec<_> = cuts
            .windows(2)
            .map(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                (w[0], w[1], (f.segment_of(mid), g.segment_of(mid)))
            })
            .collect();
        let mut res = adaptive(&pieces, tol, |&(fs, gs), x| {
            let w = g.eval_segment(gs, x)?;
            if w.abs() <= VANISHING_WEIGHT {
                return Err(Error::VanishingWeight(x));
            }
            Ok(f.eval_segment(fs, x)? / w)
        })?;
        res.breakpoints_split = cuts.len() - 2;
        Ok(res)
    })
}

fn oriented(a: f64, b: f64, tol: f64, run: impl FnOnce(f64, f64) -> Result<QuadResult>) -> Result<QuadResult> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::input(format!("integration limits must be finite, got [{a}, {b}]")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::input(format!("quadrature tolerance must be positive, got {tol}")));
    }
    if a == b {
        return Ok(QuadResult::zero());
    }
    if a < b {
        run(a, b)
    } else {
        Ok(run(b, a)?.negated())
    }
}

fn split_points(lo: f64, hi: f64, sets: &[&[f64]]) -> Vec<f64> {
    let mut cuts: Vec<f64> = sets.iter().flat_map(|s| s.iter().copied()).filter(|&b| b > lo && b < hi).collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts
}

struct Task<S> {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    depth: u32,
    seg: S,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Interval-stack adaptive Simpson. Each piece's tolerance share is
/// proportional to its width.
fn adaptive<S: Copy>(pieces: &[(f64, f64, S)], tol: f64, eval: impl Fn(&S, f64) -> Result<f64>) -> Result<QuadResult> {
    let total = pieces.last().map_or(0.0, |p| p.1) - pieces.first().map_or(0.0, |p| p.0);
    let mut out = QuadResult::zero();
    let mut stack = Vec::with_capacity(2 * MAX_DEPTH as usize);
    for &(a, b, seg) in pieces {
        let m = 0.5 * (a + b);
        let (fa, fm, fb) = (eval(&seg, a)?, eval(&seg, m)?, eval(&seg, b)?);
        stack.push(Task { a, b, fa, fm, fb, whole: simpson(a, b, fa, fm, fb), depth: 0, seg });
    }
    let mut sum = 0.0;
    let mut comp = 0.0;
    while let Some(t) = stack.pop() {
        let m = 0.5 * (t.a + t.b);
        let fl = eval(&t.seg, 0.5 * (t.a + m))?;
        let fr = eval(&t.seg, 0.5 * (m + t.b))?;
        let left = simpson(t.a, m, t.fa, fl, t.fm);
        let right = simpson(m, t.b, t.fm, fr, t.fb);
        let delta = left + right - t.whole;
        let err = delta.abs() / 15.0;
        let local_tol = tol * (t.b - t.a) / total;
        let floor = ROUNDOFF * (left.abs() + right.abs());
        if t.depth >= MIN_DEPTH && (err <= local_tol || err <= floor) {
            // Neumaier summation keeps the accumulated value at full precision
            let term = left + right + delta / 15.0;
            let s = sum + term;
            comp += if sum.abs() >= term.abs() { (sum - s) + term } else { (term - s) + sum };
            sum = s;
            out.error_estimate += err;
            continue;
        }
        if t.depth + 1 > MAX_DEPTH {
            return Err(Error::MaxDepth { depth: MAX_DEPTH, lo: t.a, hi: t.b });
        }
        out.subdivisions += 1;
        let depth = t.depth + 1;
        stack.push(Task { a: t.a, b: m, fa: t.fa, fm: fl, fb: t.fm, whole: left, depth, seg: t.seg });
        stack.push(Task { a: m, b: t.b, fa: t.fm, fm: fr, fb: t.fb, whole: right, depth, seg: t.seg });
    }
    out.value = sum + comp;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::{parse_function, ScalarFunction};

    fn fx(text: &str) -> ScalarFunction {
        parse_function(text, None).unwrap()
    }

    #[test]
    fn constant_and_orientation() {
        let one = fx("1");
        assert_eq!(integrate(&one, 1.0, 4.0, 1e-10).unwrap().value, 3.0);
        assert_eq!(integrate(&one, 4.0, 1.0, 1e-10).unwrap().value, -3.0);
        assert_eq!(integrate(&one, 2.0, 2.0, 1e-10).unwrap().value, 0.0);
    }

    #[test]
    fn step_function_is_split_exactly() {
        // 1 on [1, 2) and 3 on [2, 3]
        let f = ScalarFunction::parse_piecewise(&[(0.5, "1"), (2.0, "3")], 4.0).unwrap();
        let r = integrate(&f, 1.0, 3.0, 1e-10).unwrap();
        assert_eq!(r.value, 4.0);
        assert_eq!(r.breakpoints_split, 1);
    }

    #[test]
    fn ratio_examples() {
        let ln4 = integrate_ratio(&fx("1"), &fx("x"), 1.0, 4.0, 1e-10).unwrap();
        assert!((ln4.value - 4f64.ln()).abs() < 1e-10);
        assert!(ln4.error_estimate <= 1e-10);
        let three = integrate_ratio(&fx("x"), &fx("x"), 2.0, 5.0, 1e-10).unwrap();
        assert!((three.value - 3.0).abs() < 1e-13);
        let step = ScalarFunction::parse_piecewise(&[(1.0, "2"), (3.0, "1")], 4.0).unwrap();
        let r = integrate_ratio(&step, &fx("x"), 1.0, 4.0, 1e-10).unwrap();
        let exact = 2.0 * 3f64.ln() + (4.0f64 / 3.0).ln();
        assert!((r.value - exact).abs() < 1e-10);
        assert!((exact - 2.48491).abs() < 1e-5);
    }

    #[test]
    fn ratio_splits_at_weight_breakpoints_too() {
        let w = ScalarFunction::parse_piecewise(&[(1.0, "1"), (2.0, "2")], 3.0).unwrap();
        let r = integrate_ratio(&fx("1"), &w, 1.0, 3.0, 1e-10).unwrap();
        assert_eq!(r.value, 1.5);
        assert_eq!(r.breakpoints_split, 1);
    }

    #[test]
    fn limit_and_weight_errors() {
        let f = parse_function("x", Some(&[1.0, 2.0])).unwrap();
        assert!(matches!(integrate(&f, 0.5, 2.0, 1e-10), Err(Error::OutOfDomain { .. })));
        assert!(matches!(integrate(&f, 1.0, 2.0, 0.0), Err(Error::Input(_))));
        assert!(matches!(integrate_ratio(&fx("1"), &fx("x - 1.5"), 1.0, 2.0, 1e-10), Err(Error::VanishingWeight(_))));
    }

    #[test]
    fn non_integrable_singularity_hits_depth_cap() {
        let r = integrate(&fx("1/abs(x - 1.2345678)"), 1.0, 2.0, 1e-10);
        assert!(matches!(r, Err(Error::MaxDepth { .. }) | Err(Error::Domain { .. })), "{r:?}");
    }

    #[test]
    fn large_magnitudes_converge_through_roundoff_floor() {
        let r = integrate(&fx("x^2"), 300.0, 1000.0, 1e-10).unwrap();
        let exact = (1000f64.powi(3) - 300f64.powi(3)) / 3.0;
        assert!(((r.value - exact) / exact).abs() < 1e-14);
    }
}

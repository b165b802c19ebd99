//! Sampling-based precondition checks.
//!
//! Positivity and monotonicity are hypotheses, not something the engine can
//! prove, so they are checked on dense grids: each piece of the function is
//! sampled with its own formula, endpoints included.

use std::fmt;

use super::function::{Monotonicity, ScalarFunction, Segmented};
use super::jet::Dual;

pub const DEFAULT_GRID: usize = 1024;

/// Probe window for functions without a bounded domain.
pub const UNBOUNDED_WINDOW: (f64, f64) = (1e-6, 1e2);

/// Continuity tolerance at interior breakpoints for monotonicity checks.
pub const CONTINUITY_TOL: f64 = 1e-9;

const ORDER_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Positive,
    Monotone(Monotonicity),
    /// Positivity of the derivative of the given order.
    PositiveDerivative(u8),
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Positive => f.write_str("positivity"),
            Property::Monotone(Monotonicity::NonDecreasing) => f.write_str("non-decreasing"),
            Property::Monotone(Monotonicity::NonIncreasing) => f.write_str("non-increasing"),
            Property::Monotone(Monotonicity::None) => f.write_str("no monotonicity"),
            Property::PositiveDerivative(1) => f.write_str("positive first derivative"),
            Property::PositiveDerivative(o) => write!(f, "positive derivative of order {o}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub property: Property,
    pub window: (f64, f64),
    pub grid_size: usize,
    /// Worst offending sample as `(x, value)`. For monotonicity the value is
    /// the offending derivative or step difference.
    pub worst: Option<(f64, f64)>,
    pub note: Option<String>,
    pub verdict: bool,
}

impl ValidationReport {
    fn new(property: Property, window: (f64, f64)) -> Self {
        ValidationReport { property, window, grid_size: 0, worst: None, note: None, verdict: true }
    }

    /// Records an offender, keeping the one with the smallest value.
    fn offend(&mut self, x: f64, value: f64, note: Option<String>) {
        self.verdict = false;
        let replace = match self.worst {
            None => true,
            Some((_, w)) => value < w || (value.is_nan() && !w.is_nan()),
        };
        if replace {
            self.worst = Some((x, value));
            if note.is_some() {
                self.note = note;
            }
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.window;
        write!(f, "{} on [{lo}, {hi}] ({} samples): ", self.property, self.grid_size)?;
        match (self.verdict, self.worst) {
            (true, _) => f.write_str("holds")?,
            (false, Some((x, v))) => write!(f, "violated at x = {x} (value {v})")?,
            (false, None) => f.write_str("violated")?,
        }
        if let Some(n) = &self.note {
            write!(f, "; {n}")?;
        }
        Ok(())
    }
}

/// Sub-intervals of `[lo, hi]` that fall in a single piece.
pub(crate) fn pieces_in<F: Segmented + ?Sized>(f: &F, lo: f64, hi: f64) -> Vec<(usize, f64, f64)> {
    let bp = f.breakpoints();
    if bp.is_empty() {
        return vec![(0, lo, hi)];
    }
    let mut cuts = vec![lo];
    cuts.extend(bp.iter().copied().filter(|&b| b > lo && b < hi));
    cuts.push(hi);
    cuts.windows(2).map(|w| (f.segment_of(0.5 * (w[0] + w[1])), w[0], w[1])).collect()
}

/// `n` points from `a` to `b` inclusive; geometric when the span covers many
/// orders of magnitude.
pub(crate) fn grid(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    let geometric = a > 0.0 && b / a > 1e6;
    (0..n).map(move |i| {
        if i == n - 1 {
            return b;
        }
        let t = i as f64 / (n - 1) as f64;
        if geometric {
            a * (b / a).powf(t)
        } else {
            a + t * (b - a)
        }
    })
}

fn default_window<F: Segmented + ?Sized>(f: &F) -> (f64, f64) {
    let (lo, hi) = f.domain();
    if lo.is_finite() && hi.is_finite() {
        (lo, hi)
    } else {
        UNBOUNDED_WINDOW
    }
}

pub fn check_positivity(f: &ScalarFunction) -> ValidationReport {
    let (lo, hi) = default_window(f);
    check_positivity_on(f, lo, hi, DEFAULT_GRID)
}

/// Checks `f > 0` on `[lo, hi]` with `n` samples per piece.
pub fn check_positivity_on<F: Segmented + ?Sized>(f: &F, lo: f64, hi: f64, n: usize) -> ValidationReport {
    positivity(f, lo, hi, n, Property::Positive)
}

/// Checks that the derivative of the given order is strictly positive.
pub fn check_derivative_positive_on(f: &ScalarFunction, order: u8, lo: f64, hi: f64, n: usize) -> ValidationReport {
    positivity(&f.derivative_fn(order), lo, hi, n, Property::PositiveDerivative(order))
}

fn positivity<F: Segmented + ?Sized>(f: &F, lo: f64, hi: f64, n: usize, property: Property) -> ValidationReport {
    let mut rep = ValidationReport::new(property, (lo, hi));
    let probe = |rep: &mut ValidationReport, seg: usize, x: f64| {
        rep.grid_size += 1;
        match f.eval_segment(seg, x) {
            Ok(v) if v > 0.0 => {}
            Ok(v) => rep.offend(x, v, None),
            Err(e) => rep.offend(x, f64::NAN, Some(e.to_string())),
        }
    };
    if let Err(e) = f.check_in_domain(lo).and(f.check_in_domain(hi)) {
        rep.offend(lo, f64::NAN, Some(e.to_string()));
        return rep;
    }
    if lo == hi {
        probe(&mut rep, f.segment_of(lo), lo);
        return rep;
    }
    for (seg, a, b) in pieces_in(f, lo, hi) {
        for x in grid(a, b, n) {
            probe(&mut rep, seg, x);
        }
    }
    rep
}

pub fn check_monotonicity(g: &ScalarFunction, direction: Monotonicity) -> ValidationReport {
    let (lo, hi) = default_window(g);
    check_monotonicity_on(g, direction, lo, hi, DEFAULT_GRID)
}

/// Non-strict monotonicity on `[lo, hi]`: derivative sign at interior grid
/// points of every piece plus ordering of consecutive sampled values.
pub fn check_monotonicity_on(
    g: &ScalarFunction,
    direction: Monotonicity,
    lo: f64,
    hi: f64,
    n: usize,
) -> ValidationReport {
    let mut rep = ValidationReport::new(Property::Monotone(direction), (lo, hi));
    let sign = match direction {
        Monotonicity::NonDecreasing => 1.0,
        Monotonicity::NonIncreasing => -1.0,
        Monotonicity::None => return rep,
    };
    if let Err(e) = g.check_in_domain(lo).and(g.check_in_domain(hi)) {
        rep.offend(lo, f64::NAN, Some(e.to_string()));
        return rep;
    }
    if lo == hi {
        return rep;
    }
    let pieces = pieces_in(g, lo, hi);

    // continuity where pieces meet
    for w in pieces.windows(2) {
        let (left, _, b) = w[0];
        let right = w[1].0;
        match (g.eval_segment(left, b), g.eval_segment(right, b)) {
            (Ok(l), Ok(r)) => {
                let jump = (r - l).abs();
                if jump > CONTINUITY_TOL * l.abs().max(r.abs()).max(1.0) {
                    rep.offend(b, -jump, Some(format!("jump of {jump} at breakpoint {b}")));
                }
            }
            (Err(e), _) | (_, Err(e)) => rep.offend(b, f64::NAN, Some(e.to_string())),
        }
    }

    let mut prev: Option<f64> = None;
    for (seg, a, b) in pieces {
        let expr = &g.segments()[seg];
        let pts: Vec<f64> = grid(a, b, n).collect();
        for (i, &x) in pts.iter().enumerate() {
            rep.grid_size += 1;
            let v = match expr.eval(x) {
                Ok(v) => v,
                Err(e) => {
                    rep.offend(x, f64::NAN, Some(e.to_string()));
                    continue;
                }
            };
            if i > 0 && i + 1 < pts.len() {
                match expr.eval_as::<Dual>(x) {
                    Ok(d) => {
                        let s = sign * d.d;
                        if s < -ORDER_SLACK * d.d.abs().max(1.0) {
                            rep.offend(x, s, Some("derivative has the wrong sign".into()));
                        }
                    }
                    Err(e) => rep.offend(x, f64::NAN, Some(e.to_string())),
                }
            }
            if let Some(p) = prev {
                let step = sign * (v - p);
                if step < -ORDER_SLACK * v.abs().max(p.abs()).max(1.0) {
                    rep.offend(x, step, Some("sampled values out of order".into()));
                }
            }
            prev = Some(v);
        }
    }
    rep
}

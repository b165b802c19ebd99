use std::fmt;

use super::ast::Expr;
use super::jet::{Dual, Jet2};
use super::parse::parse_expr;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Monotonicity {
    NonDecreasing,
    NonIncreasing,
    #[default]
    None,
}

/// A function of one variable made of consecutive pieces.
///
/// Implementors expose their interior breakpoints so quadrature can split
/// there and evaluate each piece with its own formula, including at the
/// piece's right end where [`Segmented::eval`] would already switch to the
/// next piece.
pub trait Segmented {
    /// `b0 < b1 < ... < bm`; empty for a single unbounded piece.
    fn breakpoints(&self) -> &[f64];

    fn eval_segment(&self, seg: usize, x: f64) -> Result<f64>;

    fn segment_count(&self) -> usize {
        self.breakpoints().len().saturating_sub(1).max(1)
    }

    fn domain(&self) -> (f64, f64) {
        match self.breakpoints() {
            [] => (f64::NEG_INFINITY, f64::INFINITY),
            bp => (bp[0], bp[bp.len() - 1]),
        }
    }

    /// Index of the piece that owns `x` (right-continuous at interior breakpoints).
    fn segment_of(&self, x: f64) -> usize {
        let bp = self.breakpoints();
        if bp.is_empty() {
            return 0;
        }
        let j = bp.partition_point(|&b| b <= x);
        j.saturating_sub(1).min(self.segment_count() - 1)
    }

    fn check_in_domain(&self, x: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if x.is_nan() || x < lo || x > hi {
            return Err(Error::OutOfDomain { x, lo, hi });
        }
        Ok(())
    }

    fn eval(&self, x: f64) -> Result<f64> {
        self.check_in_domain(x)?;
        self.eval_segment(self.segment_of(x), x)
    }
}

/// Step-wise continuous function on `[b0, bm]`, or a single expression on the
/// whole real line when no breakpoints are given.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFunction {
    breakpoints: Vec<f64>,
    segments: Vec<Expr>,
    declared_positive: bool,
    declared_monotonicity: Monotonicity,
}

fn check_breakpoints(bp: &[f64]) -> Result<()> {
    if bp.len() < 2 {
        return Err(Error::Breakpoints("need at least the two domain endpoints".into()));
    }
    for &b in bp {
        if !b.is_finite() {
            return Err(Error::Breakpoints(format!("breakpoint {b} is not finite")));
        }
        if b <= 0.0 {
            return Err(Error::Breakpoints(format!("non-positive breakpoint {b}")));
        }
    }
    if let Some(w) = bp.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::Breakpoints(format!("{} is not followed by a larger breakpoint ({})", w[0], w[1])));
    }
    Ok(())
}

impl ScalarFunction {
    /// One expression on every piece delimited by `breakpoints`, or on the
    /// whole line when `breakpoints` is `None`.
    pub fn new(expr: Expr, breakpoints: Option<&[f64]>) -> Result<Self> {
        let (breakpoints, segments) = match breakpoints {
            None => (Vec::new(), vec![expr]),
            Some(bp) => {
                check_breakpoints(bp)?;
                (bp.to_vec(), vec![expr; bp.len() - 1])
            }
        };
        Ok(ScalarFunction {
            breakpoints,
            segments,
            declared_positive: false,
            declared_monotonicity: Monotonicity::None,
        })
    }

    /// Pieces given as `(from, expr)` pairs; piece `j` covers `[from_j, from_{j+1})`
    /// and the last one `[from_last, to]`.
    pub fn piecewise(pieces: Vec<(f64, Expr)>, to: f64) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Breakpoints("piecewise function without pieces".into()));
        }
        let mut breakpoints: Vec<f64> = pieces.iter().map(|(b, _)| *b).collect();
        breakpoints.push(to);
        check_breakpoints(&breakpoints)?;
        Ok(ScalarFunction {
            breakpoints,
            segments: pieces.into_iter().map(|(_, e)| e).collect(),
            declared_positive: false,
            declared_monotonicity: Monotonicity::None,
        })
    }

    pub fn parse_piecewise(pieces: &[(f64, &str)], to: f64) -> Result<Self> {
        let parsed = pieces.iter().map(|&(b, text)| Ok((b, parse_expr(text)?))).collect::<Result<Vec<_>>>()?;
        Self::piecewise(parsed, to)
    }

    pub fn constant(c: f64) -> Self {
        ScalarFunction {
            breakpoints: Vec::new(),
            segments: vec![Expr::Num(c)],
            declared_positive: c > 0.0,
            declared_monotonicity: Monotonicity::None,
        }
    }

    /// `x` on the whole line.
    pub fn identity() -> Self {
        ScalarFunction {
            breakpoints: Vec::new(),
            segments: vec![Expr::Var],
            declared_positive: false,
            declared_monotonicity: Monotonicity::NonDecreasing,
        }
    }

    pub fn declare_positive(mut self, positive: bool) -> Self {
        self.declared_positive = positive;
        self
    }

    pub fn declare_monotonicity(mut self, m: Monotonicity) -> Self {
        self.declared_monotonicity = m;
        self
    }

    pub fn declared_positive(&self) -> bool {
        self.declared_positive
    }

    pub fn declared_monotonicity(&self) -> Monotonicity {
        self.declared_monotonicity
    }

    pub fn segments(&self) -> &[Expr] {
        &self.segments
    }

    pub fn is_bounded(&self) -> bool {
        !self.breakpoints.is_empty()
    }

    /// Exact first or second derivative of the piece containing `x`.
    pub fn derivative(&self, x: f64, order: u8) -> Result<f64> {
        if order != 1 && order != 2 {
            return Err(Error::DerivativeOrder(order));
        }
        self.check_in_domain(x)?;
        if self.breakpoints.contains(&x) {
            return Err(Error::AtBreakpoint(x));
        }
        self.segment_derivative(self.segment_of(x), x, order)
    }

    /// Derivative of piece `seg`'s formula at `x`, with no breakpoint check.
    pub(crate) fn segment_derivative(&self, seg: usize, x: f64, order: u8) -> Result<f64> {
        let e = &self.segments[seg];
        match order {
            1 => Ok(e.eval_as::<Dual>(x)?.d),
            2 => Ok(e.eval_as::<Jet2>(x)?.d2),
            o => Err(Error::DerivativeOrder(o)),
        }
    }

    pub fn derivative_fn(&self, order: u8) -> DerivativeOf<'_> {
        DerivativeOf { f: self, order }
    }
}

impl Segmented for ScalarFunction {
    fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    fn eval_segment(&self, seg: usize, x: f64) -> Result<f64> {
        self.segments[seg].eval(x)
    }

    fn segment_count(&self) -> usize {
        self.segments.len()
    }
}

/// Piecewise derivative of a [`ScalarFunction`], evaluated by forward-mode AD.
#[derive(Debug, Clone, Copy)]
pub struct DerivativeOf<'a> {
    f: &'a ScalarFunction,
    order: u8,
}

impl Segmented for DerivativeOf<'_> {
    fn breakpoints(&self) -> &[f64] {
        self.f.breakpoints()
    }

    fn eval_segment(&self, seg: usize, x: f64) -> Result<f64> {
        self.f.segment_derivative(seg, x, self.order)
    }

    fn segment_count(&self) -> usize {
        self.f.segment_count()
    }
}

impl fmt::Display for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.breakpoints.is_empty() {
            return write!(f, "{}", self.segments[0]);
        }
        if self.segments.len() == 1 {
            let (lo, hi) = self.domain();
            return write!(f, "{} on [{lo}, {hi}]", self.segments[0]);
        }
        f.write_str("{")?;
        for (j, e) in self.segments.iter().enumerate() {
            if j > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{e} from {}", self.breakpoints[j])?;
        }
        write!(f, "; to {}}}", self.breakpoints[self.breakpoints.len() - 1])
    }
}

/// Parses `text` into a single-expression function, optionally split at
/// `breakpoints` (domain endpoints included).
pub fn parse_function(text: &str, breakpoints: Option<&[f64]>) -> Result<ScalarFunction> {
    ScalarFunction::new(parse_expr(text)?, breakpoints)
}

pub fn eval_function(f: &ScalarFunction, x: f64) -> Result<f64> {
    f.eval(x)
}

pub fn derivative(f: &ScalarFunction, x: f64, order: u8) -> Result<f64> {
    f.derivative(x, order)
}

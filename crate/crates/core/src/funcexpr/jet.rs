//! Number types the expression evaluator is generic over.
//!
//! `f64` gives plain values, [`Dual`] carries a first derivative and [`Jet2`]
//! carries first and second derivatives (truncated Taylor coefficients). All
//! three go through the same AST walk, so derivatives are exact up to
//! floating-point rounding.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic needed by the evaluator. Elementary functions are expressed
/// through [`Scalar::chain`], which lifts `phi(v)`, `phi'(v)`, `phi''(v)`.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    /// Highest derivative order carried.
    const ORDER: u8;
    fn constant(v: f64) -> Self;
    /// The independent variable at `x`.
    fn variable(x: f64) -> Self;
    fn value(&self) -> f64;
    fn chain(self, f0: f64, f1: f64, f2: f64) -> Self;
    /// True when every carried component is finite.
    fn is_finite(&self) -> bool;
}

impl Scalar for f64 {
    const ORDER: u8 = 0;
    fn constant(v: f64) -> Self {
        v
    }
    fn variable(x: f64) -> Self {
        x
    }
    fn value(&self) -> f64 {
        *self
    }
    fn chain(self, f0: f64, _f1: f64, _f2: f64) -> Self {
        f0
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

/// First-order dual number `v + d·ε`, `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        let v = self.v / o.v;
        Dual { v, d: (self.d - v * o.d) / o.v }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { v: -self.v, d: -self.d }
    }
}

impl Scalar for Dual {
    const ORDER: u8 = 1;
    fn constant(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }
    fn variable(x: f64) -> Self {
        Dual { v: x, d: 1.0 }
    }
    fn value(&self) -> f64 {
        self.v
    }
    fn chain(self, f0: f64, f1: f64, _f2: f64) -> Self {
        Dual { v: f0, d: f1 * self.d }
    }
    fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d.is_finite()
    }
}

/// Second-order jet: value, first and second derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 { v: self.v + o.v, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2 { v: self.v - o.v, d1: self.d1 - o.d1, d2: self.d2 - o.d2 }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, o: Jet2) -> Jet2 {
        // q = u / w  =>  u = q w, solve order by order
        let v = self.v / o.v;
        let d1 = (self.d1 - v * o.d1) / o.v;
        let d2 = (self.d2 - 2.0 * d1 * o.d1 - v * o.d2) / o.v;
        Jet2 { v, d1, d2 }
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 { v: -self.v, d1: -self.d1, d2: -self.d2 }
    }
}

impl Scalar for Jet2 {
    const ORDER: u8 = 2;
    fn constant(v: f64) -> Self {
        Jet2 { v, d1: 0.0, d2: 0.0 }
    }
    fn variable(x: f64) -> Self {
        Jet2 { v: x, d1: 1.0, d2: 0.0 }
    }
    fn value(&self) -> f64 {
        self.v
    }
    fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        Jet2 { v: f0, d1: f1 * self.d1, d2: f2 * self.d1 * self.d1 + f1 * self.d2 }
    }
    fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }
}

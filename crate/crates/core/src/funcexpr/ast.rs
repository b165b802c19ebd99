use std::fmt;

use super::jet::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

/// Built-in functions. The set is kept to functions that are monotone on
/// their natural domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        match name {
            "exp" => Some(Func::Exp),
            "log" => Some(Func::Log),
            "sqrt" => Some(Func::Sqrt),
            "abs" => Some(Func::Abs),
            _ => None,
        }
    }

    fn apply<S: Scalar>(self, u: S) -> Result<S> {
        let v = u.value();
        let out = match self {
            Func::Exp => {
                let e = v.exp();
                u.chain(e, e, e)
            }
            Func::Log => {
                if v <= 0.0 {
                    return Err(Error::Domain { op: "log", arg: v });
                }
                u.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
            }
            Func::Sqrt => {
                if v < 0.0 {
                    return Err(Error::Domain { op: "sqrt", arg: v });
                }
                let s = v.sqrt();
                if S::ORDER == 0 {
                    u.chain(s, 0.0, 0.0)
                } else {
                    u.chain(s, 0.5 / s, -0.25 / (s * v))
                }
            }
            Func::Abs => {
                let sign = if v > 0.0 {
                    1.0
                } else if v < 0.0 {
                    -1.0
                } else {
                    0.0
                };
                u.chain(v.abs(), sign, 0.0)
            }
        };
        if out.is_finite() {
            Ok(out)
        } else {
            Err(Error::Domain { op: self.name(), arg: v })
        }
    }
}

/// Expression tree over the single variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Num(v)
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn call(func: Func, arg: Expr) -> Expr {
        Expr::Call(func, Box::new(arg))
    }

    /// True when the tree does not reference `x`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Num(_) => true,
            Expr::Var => false,
            Expr::Neg(e) | Expr::Call(_, e) => e.is_constant(),
            Expr::Binary(_, l, r) => l.is_constant() && r.is_constant(),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_as::<f64>(x)
    }

    /// Evaluates the tree with `x` seeded as the independent variable of `S`.
    pub fn eval_as<S: Scalar>(&self, x: f64) -> Result<S> {
        let out = self.walk(S::variable(x))?;
        if out.is_finite() {
            Ok(out)
        } else {
            Err(Error::Domain { op: "evaluation", arg: x })
        }
    }

    fn walk<S: Scalar>(&self, x: S) -> Result<S> {
        Ok(match self {
            Expr::Num(v) => S::constant(*v),
            Expr::Var => x,
            Expr::Neg(e) => -e.walk(x)?,
            Expr::Call(f, e) => f.apply(e.walk(x)?)?,
            Expr::Binary(op, l, r) => {
                let lv = l.walk(x)?;
                match op {
                    BinOp::Add => lv + r.walk(x)?,
                    BinOp::Sub => lv - r.walk(x)?,
                    BinOp::Mul => lv * r.walk(x)?,
                    BinOp::Div => {
                        let rv = r.walk(x)?;
                        if rv.value() == 0.0 {
                            return Err(Error::Domain { op: "division", arg: 0.0 });
                        }
                        lv / rv
                    }
                    BinOp::Pow if r.is_constant() => {
                        let c = r.walk(0.0_f64)?;
                        powc(lv, c)?
                    }
                    BinOp::Pow => {
                        let base = lv.value();
                        if base <= 0.0 {
                            return Err(Error::Domain { op: "power with variable exponent", arg: base });
                        }
                        let ln = Func::Log.apply(lv)?;
                        Func::Exp.apply(r.walk(x)? * ln)?
                    }
                }
            }
        })
    }
}

fn powc<S: Scalar>(u: S, c: f64) -> Result<S> {
    let v = u.value();
    let f0 = v.powf(c);
    if !f0.is_finite() {
        return Err(Error::Domain { op: "power", arg: v });
    }
    let (f1, f2) = if S::ORDER == 0 {
        (0.0, 0.0)
    } else {
        let f1 = if c == 0.0 { 0.0 } else { c * v.powf(c - 1.0) };
        let f2 = if c == 0.0 || c == 1.0 { 0.0 } else { c * (c - 1.0) * v.powf(c - 2.0) };
        (f1, f2)
    };
    let out = u.chain(f0, f1, f2);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::Domain { op: "power", arg: v })
    }
}

/// Canonical, fully parenthesised rendering that re-parses to the same tree
/// (up to negative literals, which come back as negated positives).
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) if v.is_sign_negative() => write!(f, "(-{:?})", -v),
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Var => f.write_str("x"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

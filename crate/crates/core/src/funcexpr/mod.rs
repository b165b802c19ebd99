//! Expressions in one variable: parsing, evaluation, forward-mode
//! derivatives, piecewise functions and precondition checks.

mod ast;
mod function;
pub mod jet;
mod parse;
mod validate;

pub use ast::{BinOp, Expr, Func};
pub use function::{derivative, eval_function, parse_function, DerivativeOf, Monotonicity, ScalarFunction, Segmented};
pub use parse::parse_expr;
pub use validate::{
    check_derivative_positive_on, check_monotonicity, check_monotonicity_on, check_positivity, check_positivity_on,
    Property, ValidationReport, CONTINUITY_TOL, DEFAULT_GRID, UNBOUNDED_WINDOW,
};

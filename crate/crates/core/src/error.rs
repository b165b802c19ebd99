use thiserror::Error;

use crate::funcexpr::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("invalid breakpoints: {0}")]
    Breakpoints(String),

    #[error("{x} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("domain error: {op} of {arg}")]
    Domain { op: &'static str, arg: f64 },

    #[error("derivative requested at breakpoint {0}")]
    AtBreakpoint(f64),

    #[error("derivative order must be 1 or 2, got {0}")]
    DerivativeOrder(u8),

    #[error("adaptive quadrature exceeded depth {depth} on [{lo}, {hi}]")]
    MaxDepth { depth: u32, lo: f64, hi: f64 },

    #[error("weight vanishes at {0}")]
    VanishingWeight(f64),

    #[error("no sign change on [{lo}, {hi}]: F(lo) = {flo}, F(hi) = {fhi}")]
    NoSignChange { lo: f64, hi: f64, flo: f64, fhi: f64 },

    #[error("root finder hit the iteration cap ({0})")]
    IterationCap(usize),

    #[error("k = {0}: the inequality does not hold for even values of k")]
    EvenDimension(u32),

    #[error("k = {k} exceeds the limit {max} for this integration mode")]
    DimensionLimit { k: u32, max: u32 },

    #[error("precondition failed: {0}")]
    Precondition(Box<ValidationReport>),

    #[error(
        "exponent {name} = {value} is excluded: for 0 and -1 the integrals become logarithmic \
         and the final form of the result changes"
    )]
    ExcludedExponent { name: &'static str, value: f64 },

    #[error("invalid experiment: equilibrium temperature {t_eq} is not positive")]
    InvalidExperiment { t_eq: f64 },

    #[error("balance functional sign conditions violated: F(x1) = {f_lo}, F(xn) = {f_hi}")]
    SignConditions { f_lo: f64, f_hi: f64 },

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

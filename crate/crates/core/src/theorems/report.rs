use std::fmt;

/// Which inequality a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    /// Non-negative work at the entropy-balance point.
    Reversible,
    /// Weight frozen at `x0` dominates the weighted integral.
    Irreversible,
    /// Mean of `h` versus `h` of the mean.
    Jensen,
    /// Odd powers of power-mean differences.
    PowerMean,
}

impl TheoremId {
    pub fn label(self) -> &'static str {
        match self {
            TheoremId::Reversible => "reversible-balance",
            TheoremId::Irreversible => "irreversible-contact",
            TheoremId::Jensen => "restricted-jensen",
            TheoremId::PowerMean => "power-mean",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Root of the balance functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumResult {
    pub x0: f64,
    /// Value of the balance functional at `x0`.
    pub residual: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Outcome of one inequality check.
///
/// `margin` is always `lhs - rhs`. When `direction_flipped` is set the claim
/// is `lhs <= rhs`, so the check is `-margin >= -tolerance`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityReport {
    pub theorem: TheoremId,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub satisfied: bool,
    pub direction_flipped: bool,
    pub k: u32,
    /// Balance point used, when the check involves one.
    pub x0: Option<f64>,
}

impl InequalityReport {
    pub(crate) fn new(theorem: TheoremId, lhs: f64, rhs: f64, tolerance: f64, flipped: bool, k: u32) -> Self {
        let margin = lhs - rhs;
        let oriented = if flipped { -margin } else { margin };
        InequalityReport {
            theorem,
            lhs,
            rhs,
            margin,
            tolerance,
            satisfied: oriented >= -tolerance,
            direction_flipped: flipped,
            k,
            x0: None,
        }
    }

    pub(crate) fn at(mut self, x0: f64) -> Self {
        self.x0 = Some(x0);
        self
    }

    /// Margin with the sign that the claim says is non-negative.
    pub fn oriented_margin(&self) -> f64 {
        if self.direction_flipped {
            -self.margin
        } else {
            self.margin
        }
    }
}

impl fmt::Display for InequalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.direction_flipped { "<=" } else { ">=" };
        write!(
            f,
            "{}: lhs = {:.12e} {rel} rhs = {:.12e} (margin {:.6e}, tol {:e}) -> {}",
            self.theorem,
            self.lhs,
            self.rhs,
            self.margin,
            self.tolerance,
            if self.satisfied { "satisfied" } else { "VIOLATED" }
        )
    }
}

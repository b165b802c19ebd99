use crate::error::{Error, Result};
use crate::funcexpr::{
    check_monotonicity_on, check_positivity_on, Monotonicity, ScalarFunction, Segmented, DEFAULT_GRID,
};

pub(crate) fn require_positive<F: Segmented + ?Sized>(f: &F, lo: f64, hi: f64, what: &str) -> Result<()> {
    let rep = check_positivity_on(f, lo, hi, DEFAULT_GRID);
    if rep.verdict {
        Ok(())
    } else {
        Err(Error::Precondition(Box::new(rep.with_note(format!("{what} must be positive")))))
    }
}

/// Positivity plus the direction in which `g` is monotone on `[lo, hi]`.
///
/// A declared direction is checked and used as is, which also settles
/// degenerate windows. Otherwise a constant weight counts as non-decreasing.
pub(crate) fn weight_direction(g: &ScalarFunction, lo: f64, hi: f64) -> Result<Monotonicity> {
    require_positive(g, lo, hi, "weight g")?;
    let declared = g.declared_monotonicity();
    if declared != Monotonicity::None {
        let rep = check_monotonicity_on(g, declared, lo, hi, DEFAULT_GRID);
        if rep.verdict {
            return Ok(declared);
        }
        return Err(Error::Precondition(Box::new(rep.with_note("weight g violates its declared monotonicity"))));
    }
    let up = check_monotonicity_on(g, Monotonicity::NonDecreasing, lo, hi, DEFAULT_GRID);
    if up.verdict {
        return Ok(Monotonicity::NonDecreasing);
    }
    let down = check_monotonicity_on(g, Monotonicity::NonIncreasing, lo, hi, DEFAULT_GRID);
    if down.verdict {
        return Ok(Monotonicity::NonIncreasing);
    }
    Err(Error::Precondition(Box::new(up.with_note("weight g is neither non-decreasing nor non-increasing"))))
}

pub(crate) fn check_k(k: u32) -> Result<()> {
    crate::numerics::check_odd(k)
}

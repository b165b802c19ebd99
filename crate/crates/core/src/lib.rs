//! Verification engine for entropy-balance integral inequalities.
//!
//! A set of bodies at temperatures `x_i` with heat capacity `f` equilibrates
//! at the root `x0` of `F(y) = sum_i int_y^{x_i} f/g`. The crate computes that
//! root, checks the reversible and irreversible inequalities that follow from
//! it (including odd-dimensional and power-mean variants), and runs the
//! corresponding thermodynamic scenarios with entropy and work bookkeeping.

pub mod error;
pub mod families;
pub mod funcexpr;
pub mod numerics;
pub mod theorems;
pub mod thermo;
mod tolerances;

pub use error::{Error, Result};
pub use funcexpr::{parse_function, Monotonicity, ScalarFunction, Segmented, ValidationReport};
pub use numerics::{QuadResult, RootResult};
pub use theorems::{BlockSystem, CounterexampleReport, EquilibriumResult, InequalityReport, TheoremId};
pub use thermo::{NegCapReport, ThermoOutcome};
pub use tolerances::Tolerances;

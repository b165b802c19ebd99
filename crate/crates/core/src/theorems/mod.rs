//! Balance points and the inequalities checked at them.

mod counterexample;
mod irreversible;
mod jensen;
mod powermean;
mod preconditions;
mod report;
mod reversible;
mod system;

pub use counterexample::{even_k_counterexample, CounterexampleReport};
pub use irreversible::verify_irreversible;
pub use jensen::{jensen_verify, JensenReport, ROUTE_AGREEMENT};
pub use powermean::{powermean_solve, powermean_verify};
pub use report::{EquilibriumResult, InequalityReport, TheoremId};
pub use reversible::{solve_equilibrium, verify_reversible};
pub use system::{BlockSystem, Capacities};

pub(crate) use preconditions::require_positive;
pub(crate) use reversible::{balance_root, capacity_refs};

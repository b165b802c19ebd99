//! Scenario runner: reads JSON scenario files, dispatches them to the
//! engine and renders the reports as a table, CSV or JSON.

pub mod error;
pub mod report;
pub mod run;
pub mod scenario;

pub use error::{CliError, EXIT_INPUT, EXIT_OK, EXIT_USAGE, EXIT_VERDICT};
pub use report::{exit_status, render, Format, Report, Value, Verdict};
pub use run::{parse_range, run_scenario, suite, sweep, Action, SuiteSummary};
pub use scenario::{FunctionSpec, Mode, Piece, Scenario, ToleranceOverrides};

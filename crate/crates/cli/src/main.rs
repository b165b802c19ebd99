use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thermineq_cli::{
    exit_status, parse_range, render, report::write_out, run_scenario, suite, sweep, Action, CliError, Format,
    FunctionSpec, Mode, Report, Scenario, ToleranceOverrides, EXIT_USAGE,
};
use thermineq_core::Tolerances;

/// Overrides the default verdict tolerance when `--tol` is not given.
const TOL_ENV: &str = "INEQ_DEFAULT_TOL";

#[derive(Parser)]
#[command(
    name = "thermineq",
    version,
    about = "Verify entropy-balance integral inequalities and run heat-exchange scenarios"
)]
struct Cli {
    /// Verdict tolerance: a check passes when its margin is >= -tol [default: 1e-8, or $INEQ_DEFAULT_TOL]
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Absolute tolerance of each 1-D integral [default: 1e-10]
    #[arg(long = "quad-tol", global = true)]
    quad_tol: Option<f64>,
    /// Output format [default: csv for sweep, table otherwise]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized runs
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the inequality (or run the experiment) described by a scenario file
    Verify { file: PathBuf },
    /// Compute the balance point of a scenario
    Solve { file: PathBuf },
    /// Run a scenario over a grid of values of one numeric field
    Sweep {
        file: PathBuf,
        /// Field to vary, e.g. `t2`, `a` or `xs.0`
        #[arg(long)]
        param: String,
        /// Inclusive grid `lo:hi:n`, n >= 2
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        /// Run each row as this thermodynamic scenario instead of verifying it
        #[arg(long, value_enum)]
        thermo: Option<ThermoKind>,
    },
    /// Restricted Jensen check for a convex increasing h
    Jensen {
        #[arg(long)]
        h: String,
        /// Comma-separated points
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        ys: Vec<f64>,
    },
    /// Show that the balance equation has no real root for k = 2
    Counterexample {
        #[arg(long)]
        x1: f64,
        #[arg(long)]
        x2: f64,
    },
    /// Run a thermodynamic scenario with entropy and work bookkeeping
    Thermo { kind: ThermoKind, file: PathBuf },
    /// Randomized theorem checks over the built-in function families
    Suite {
        #[arg(long, default_value_t = 1000)]
        draws: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ThermoKind {
    Reversible,
    Irreversible,
    Reservoir,
    Negcap,
}

impl ThermoKind {
    fn mode(self) -> Mode {
        match self {
            ThermoKind::Reversible => Mode::Reversible,
            ThermoKind::Irreversible => Mode::Irreversible,
            ThermoKind::Reservoir => Mode::Reservoir,
            ThermoKind::Negcap => Mode::Negcap,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("{name} must be a positive number, got {v}")))
    }
}

/// Built-in defaults with the environment override applied; scenario files
/// and flags take precedence in that order.
fn base_tolerances() -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    if let Ok(text) = std::env::var(TOL_ENV) {
        let v = text.trim().parse().map_err(|_| CliError::Usage(format!("{TOL_ENV}={text:?} is not a number")))?;
        tol.verdict = positive(TOL_ENV, v)?;
    }
    Ok(tol)
}

fn with_flags(mut s: Scenario, cli: &Cli) -> Result<Scenario, CliError> {
    if cli.tol.is_some() || cli.quad_tol.is_some() {
        let o = s.tolerances.get_or_insert_with(ToleranceOverrides::default);
        if let Some(t) = cli.tol {
            o.verdict = Some(positive("--tol", t)?);
        }
        if let Some(q) = cli.quad_tol {
            o.quad = Some(positive("--quad-tol", q)?);
        }
    }
    Ok(s)
}

fn execute(cli: &Cli) -> Result<(Vec<Report>, Format), CliError> {
    let base = base_tolerances()?;
    let table = cli.format.unwrap_or(Format::Table);
    let single = |s: Scenario, action| -> Result<(Vec<Report>, Format), CliError> {
        Ok((vec![run_scenario(&with_flags(s, cli)?, action, base)?], table))
    };
    match &cli.command {
        Command::Verify { file } => single(Scenario::load(file)?, Action::Verify),
        Command::Solve { file } => single(Scenario::load(file)?, Action::Solve),
        Command::Thermo { kind, file } => single(Scenario::load(file)?, Action::Thermo(kind.mode())),
        Command::Jensen { h, ys } => {
            let mut s = Scenario::new(Mode::Jensen);
            s.h = Some(FunctionSpec::Expr(h.clone()));
            s.ys = Some(ys.clone());
            single(s, Action::Verify)
        }
        Command::Counterexample { x1, x2 } => {
            let mut s = Scenario::new(Mode::Counterexample);
            s.x1 = Some(*x1);
            s.x2 = Some(*x2);
            single(s, Action::Verify)
        }
        Command::Sweep { file, param, range, thermo } => {
            let grid = parse_range(range)?;
            let s = with_flags(Scenario::load(file)?, cli)?;
            let action = thermo.map_or(Action::Verify, |k| Action::Thermo(k.mode()));
            Ok((sweep(&s, action, param, &grid, base)?, cli.format.unwrap_or(Format::Csv)))
        }
        Command::Suite { draws } => {
            let mut tol = base;
            if let Some(t) = cli.tol {
                tol.verdict = positive("--tol", t)?;
            }
            if let Some(q) = cli.quad_tol {
                tol.quad = positive("--quad-tol", q)?;
            }
            let summary = suite(cli.seed, *draws, tol)?;
            Ok((vec![summary.report(cli.seed)], table))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let result = execute(&cli).and_then(|(reports, format)| {
        write_out(&render(&reports, format)?)?;
        Ok(exit_status(&reports))
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

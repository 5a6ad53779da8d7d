//! `ctqs`: continuous-time quantum search simulator CLI.
//!
//! Subcommands emit the probability curves, spectral sweeps, scaling tables,
//! and diagnostic summaries computed by `ctqs-core`, as CSV or JSON. Every
//! command re-verifies the analytic identities behind its output and exits
//! with code 3 if any fails; IO problems exit with 4 and bad flags with 2.

mod commands;
mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{Fig3Case, Table1Scenario};
use output::{emit, json_to_string, CliError, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "ctqs",
    version,
    about = "Continuous-time quantum search and time-optimal evolution simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenbasis occupation probabilities of |0> and |1> over [0, pi/2].
    Fig2 {
        #[arg(long, default_value_t = 1.0)]
        omega0: f64,
        #[arg(long, default_value_t = 1.0)]
        nu0: f64,
        /// Number of grid intervals (emits steps + 1 rows).
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Instantaneous levels of the interpolating search Hamiltonian.
    Fig3 {
        #[arg(long, value_enum)]
        case: Fig3Case,
        /// Number of xi samples on [0, 1].
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Characteristic search times over N = 2^k with the fitted slope.
    Scaling {
        #[arg(long, default_value_t = 20)]
        k_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Geometry summary of the optimal/suboptimal canonical scenarios.
    Table1 {
        #[arg(long, value_enum)]
        scenario: Table1Scenario,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Failure diagnosis of each search scheme on orthogonal states.
    Table2 {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Minimum gap of the coupled schedule per coupling strength.
    CouplingFix {
        /// Coupling strengths (repeatable).
        #[arg(long = "gamma", default_values_t = [0.05, 0.1, 0.25])]
        gammas: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Imbalance scan: orthogonality is feasible only at epsilon = 0.
    ConstraintScan {
        /// Number of epsilon samples on [-0.9, 0.9].
        #[arg(long, default_value_t = 1801)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Distance between the dt = pi simulation step and Grover's iterate.
    GroverCheck {
        /// Search-space dimensions (repeatable).
        #[arg(long = "n", default_values_t = [2u64, 4, 64, 1024])]
        dims: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn render_table(
    table: Table,
    format: Format,
    params: serde_json::Value,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let content = match format {
        Format::Csv => table.to_csv(),
        Format::Json => json_to_string(&table.to_json(params)),
    };
    emit(out.map(|p| p.as_path()), &content)
}

fn render_json(
    doc: serde_json::Value,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage(
            "this command emits a structured document; only --format json is supported".into(),
        ));
    }
    emit(out.map(|p| p.as_path()), &json_to_string(&doc))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fig2 {
            omega0,
            nu0,
            steps,
            out,
            format,
        } => {
            let table = commands::fig2(omega0, nu0, steps)?;
            let params = serde_json::json!({ "omega0": omega0, "nu0": nu0, "steps": steps });
            render_table(table, format, params, out.as_ref())
        }
        Command::Fig3 {
            case,
            grid,
            out,
            format,
        } => {
            let table = commands::fig3(case, grid)?;
            let params = serde_json::json!({ "case": format!("{case:?}"), "grid": grid });
            render_table(table, format, params, out.as_ref())
        }
        Command::Scaling { k_max, out, format } => {
            render_json(commands::scaling(k_max)?, format, out.as_ref())
        }
        Command::Table1 {
            scenario,
            out,
            format,
        } => render_json(commands::table1(scenario)?, format, out.as_ref()),
        Command::Table2 { out, format } => render_json(commands::table2()?, format, out.as_ref()),
        Command::CouplingFix {
            gammas,
            out,
            format,
        } => {
            let table = commands::coupling_fix(&gammas)?;
            let params = serde_json::json!({ "gammas": gammas });
            render_table(table, format, params, out.as_ref())
        }
        Command::ConstraintScan { grid, out, format } => {
            render_json(commands::constraint_scan(grid)?, format, out.as_ref())
        }
        Command::GroverCheck { dims, out, format } => {
            render_json(commands::grover_check(&dims)?, format, out.as_ref())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

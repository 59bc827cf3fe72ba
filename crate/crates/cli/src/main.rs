use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thinfilm_cli::config::{parse_config_with, Overrides};
use thinfilm_cli::{
    check_command, convergence_command, exact_command, run_command, CliError, EXIT_CODE_HELP,
    EXIT_IO,
};
use thinfilm_core::fvm::Scheme;

#[derive(Parser)]
#[command(
    name = "thinfilm",
    version,
    about = "Two-phase thin-film Riemann solver and finite-volume simulator"
)]
#[command(after_help = EXIT_CODE_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a finite-volume scheme to t_end and write the cell averages as CSV
    Run(CommonArgs),
    /// Sample the exact Riemann solution at t_end on the cell midpoints
    Exact(CommonArgs),
    /// L1 convergence table for both schemes against the exact solution
    Convergence(CommonArgs),
    /// Invariant suite on random states (uses `samples` and `seed`)
    Check(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario file (key = value lines)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_parser = parse_scheme)]
    scheme: Option<Scheme>,
    #[arg(long)]
    cells: Option<usize>,
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    #[arg(long)]
    cfl: Option<f64>,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse::<Scheme>().map_err(|e| e.to_string())
}

fn execute(cli: Cli) -> Result<thinfilm_cli::RunReport, CliError> {
    let (args, cmd): (&CommonArgs, fn(&_) -> _) = match &cli.command {
        Command::Run(a) => (a, run_command),
        Command::Exact(a) => (a, exact_command),
        Command::Convergence(a) => (a, convergence_command),
        Command::Check(a) => (a, check_command),
    };
    let text = match &args.config {
        Some(p) => std::fs::read_to_string(p).map_err(|source| CliError::Io {
            path: p.clone(),
            source,
        })?,
        None if matches!(cli.command, Command::Check(_)) => "scenario = gaussian\n".to_string(),
        None => String::new(),
    };
    let ov = Overrides {
        out: args.out.clone(),
        scheme: args.scheme,
        cells: args.cells,
        t_end: args.t_end,
        cfl: args.cfl,
    };
    let scenario = parse_config_with(&text, &ov)?;
    cmd(&scenario)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(report) => {
            eprint!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = e.exit_code();
            ExitCode::from(u8::try_from(code).unwrap_or(EXIT_IO as u8))
        }
    }
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use octopara_cli::commands::{self, Calculus, CliError, FnSpec, EXIT_INPUT, EXIT_OK, EXIT_VERIFY_FAILED};

#[derive(Parser)]
#[command(name = "octopara", version, about = "Para-linear operators on octonionic Hilbert bimodules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Args)]
struct Common {
    /// Numerical tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Seed for every random choice
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the result here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Run property suites; all of them when none are named
    Verify {
        suites: Vec<String>,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replace every per-property tolerance
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include wall time in the report
        #[arg(long)]
        timing: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Strong-eigenpair decomposition of a self-adjoint operator
    Decompose {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Rebuild an operator from its quadratic form alone
    Polarize {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Apply a function of the spectrum through the left or right calculus
    Funcalc {
        input: PathBuf,
        /// Polynomial coefficients c0,c1,... or a JSON array of reals and 8-arrays
        #[arg(long = "poly", conflicts_with = "table", required_unless_present = "table")]
        poly: Option<String>,
        /// Spectrum function file
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        #[command(flatten)]
        common: Common,
    },
    /// Adjoint operator
    Adjoint {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Operator norm
    Norm {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError { code: EXIT_INPUT, message: format!("cannot write {}: {e}", path.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (text, output, code) = match cli.command {
        Command::Verify { suites, trials, seed, tol, format: Format::Json, timing, output } => {
            let outcome = commands::verify(&suites, trials, seed, tol, timing)?;
            for r in &outcome.reports {
                eprintln!(
                    "{}: {} properties, {} trials, {} failures",
                    r.suite,
                    r.properties.len(),
                    r.trials,
                    r.failures
                );
            }
            let code = if outcome.failures == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED };
            (commands::verify_json(&outcome)?, output, code)
        }
        Command::Decompose { input, common } => {
            (commands::decompose_cmd(&input, common.tol, common.seed)?, common.output, EXIT_OK)
        }
        Command::Polarize { input, common } => (commands::polarize_cmd(&input, common.tol)?, common.output, EXIT_OK),
        Command::Funcalc { input, poly, table, side, common } => {
            let spec = match (&poly, &table) {
                (Some(p), _) => FnSpec::Polynomial(p),
                (None, Some(t)) => FnSpec::Table(t),
                (None, None) => unreachable!("clap requires --poly or --table"),
            };
            let side = match side {
                SideArg::Left => Calculus::Left,
                SideArg::Right => Calculus::Right,
            };
            (commands::funcalc_cmd(&input, spec, side, common.tol, common.seed)?, common.output, EXIT_OK)
        }
        Command::Adjoint { input, common } => (commands::adjoint_cmd(&input, common.tol)?, common.output, EXIT_OK),
        Command::Norm { input, common } => (commands::norm_cmd(&input, common.tol)?, common.output, EXIT_OK),
    };
    emit(&text, output.as_ref())?;
    Ok(code)
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    };
    ExitCode::from(code as u8)
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand};
use lorentzgen_cli::config::CONFIG_HELP;
use lorentzgen_cli::presets::{preset, PRESETS};
use lorentzgen_cli::{parse_config, run_scenario, verify_identities, CliError, Fault};

/// Charged-particle motion as a sequence of infinitesimal Lorentz transformations.
#[derive(Parser, Debug)]
#[command(name = "lorentzgen", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate a trajectory and write a CSV plus an invariant report.
    #[command(after_help = CONFIG_HELP)]
    Simulate(SimulateArgs),
    /// Check generator, commutator and frame-transformation identities on random samples.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Scenario config file.
    #[arg(
        long,
        conflicts_with = "scenario",
        required_unless_present = "scenario"
    )]
    config: Option<PathBuf>,
    /// Built-in scenario.
    #[arg(long, value_parser = PossibleValuesParser::new(PRESETS))]
    scenario: Option<String>,
    /// CSV output path; overrides the config's `output`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn simulate(args: SimulateArgs) -> Result<(), CliError> {
    let cfg = match (&args.config, &args.scenario) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Read {
                path: path.clone(),
                source,
            })?;
            parse_config(&text)?
        }
        (None, Some(name)) => {
            preset(name).ok_or_else(|| CliError::Usage(format!("unknown scenario `{name}`")))?
        }
        (None, None) => {
            return Err(CliError::Usage(
                "one of --config or --scenario is required".into(),
            ))
        }
    };
    let outcome = run_scenario(&cfg, args.out.as_deref())?;
    print!("{}", outcome.report_text);
    println!("{:<16}{}", "csv", outcome.csv_path.display());
    println!("{:<16}{}", "report", outcome.report_path.display());
    Ok(())
}

fn verify(seed: u64, fault: Option<Fault>) -> Result<(), CliError> {
    let report = verify_identities(seed, fault)?;
    print!("{}", report.render());
    match report.failed() {
        0 => Ok(()),
        failed => Err(CliError::IdentityFailure { failed }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Verify { seed, inject_fault } => verify(seed, inject_fault),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

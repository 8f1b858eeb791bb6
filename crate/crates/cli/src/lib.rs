//! Command-line front end: scenario configuration, trajectory output and the
//! randomised identity verifier.

pub mod config;
pub mod error;
pub mod presets;
pub mod run;
pub mod verify;

pub use config::{parse_config, ScenarioConfig};
pub use error::CliError;
pub use run::{run_scenario, RunOutcome};
pub use verify::{verify_identities, Fault, VerifyReport};

//! Configuration-driven front end for `casimir_core`: figure presets,
//! parameter sweeps and CSV output.

pub mod app;
pub mod config;
pub mod error;
pub mod presets;
pub mod run;
pub mod validate;

pub use config::{RunConfig, RunKind, Variable};
pub use error::CliError;
pub use presets::Preset;
pub use run::{run, RunOutput, Table};

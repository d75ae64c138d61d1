//! Configuration, manifests and subcommands behind the `citecoder` binary.

pub mod commands;
pub mod config;
pub mod manifest;

pub use commands::{cmd_code, cmd_eval, cmd_net, cmd_report, CliError, CodeArgs, CodeOutcome};
pub use config::PipelineConfig;
pub use manifest::{load_manifest, parse_manifest, ManifestEntry};

//! Command-line driver, configuration files, field dumps and CSV output for
//! the `polybgk-core` solver.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod exec;
pub mod fieldio;
pub mod output;

pub use cli::run_cli;
pub use config::{parse_config, ConfigError, RunConfig};

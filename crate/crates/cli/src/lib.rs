//! Command-line front end and HTTP service for `fsmgrade-core`.

pub mod commands;
pub mod service;

pub use commands::{execute, Cli, Command, Outcome};

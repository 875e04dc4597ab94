//! Command-line front end: configuration, file formats, model persistence and
//! the `ingest | collate | regress | train | cv | classify | report` commands.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod model;

pub use config::{RunConfig, StrandFilter};
pub use error::{CliError, Result};
pub use model::{ModelFile, FORMAT_VERSION};

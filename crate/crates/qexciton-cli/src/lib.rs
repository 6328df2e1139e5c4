//! Batch front end for the deformed-exciton cavity library: JSON scenario
//! configs in, deterministic CSV (and optional SVG line plots) out, plus
//! figure presets and the cross-validation sweep.
//!
//! The binary is `qexciton`; this library crate holds everything the
//! binary does so tests can drive it in-process.

#![warn(missing_docs)]

pub mod config;
pub mod error;
pub mod preset;
pub mod runner;
pub mod scenario;
pub mod svg;
pub mod units;

pub use error::{CliError, EXIT_INVALID_CONFIG, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION_FAILED};

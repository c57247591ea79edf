//! File formats, seeded experiment runs, CSV metrics and SVG plots for the
//! `qas-core` agents, plus the `qas` command-line tool.

pub mod checkpoint;
pub mod config;
mod error;
pub mod experiment;
pub mod plot;
pub mod target;

pub use error::{HarnessError, Result};

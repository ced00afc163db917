//! Command-line frontend and file formats for `ptvertex-core`.
//!
//! The binary is a thin wrapper over [`cli::run`], which returns the exit
//! code and the emitted text so the whole CLI can be driven from tests.

pub mod cli;
pub mod exec;
pub mod graph_io;
pub mod points;
pub mod report;

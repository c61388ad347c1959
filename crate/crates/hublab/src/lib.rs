//! Files, reports and the command-line front-end for `hublab-core`.

pub mod cli;
pub mod commands;
pub mod formats;
pub mod report;

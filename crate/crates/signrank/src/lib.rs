//! File formats and the command-line front end for `signrank-core`.

pub mod cli;
pub mod formats;

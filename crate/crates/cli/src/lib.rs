//! Command-line front end for `hubbard_swap`: argument handling, a rayon
//! backed sweeper, CSV/JSON output and the `verify` invariant suite.

pub mod cli;
pub mod error;
pub mod format;
pub mod parallel;
pub mod report;
pub mod verify;

pub use cli::{run, Cli};
pub use error::CliError;

//! Batch verification front end for the `kites` crate: a parallel
//! exhaustive checker, JSON reports and the `kitecalc` subcommands.

pub mod parallel;
pub mod report;
pub mod run;

pub use parallel::{default_workers, par_check, par_map, par_run};
pub use run::{CliError, Family, Format, Outcome};

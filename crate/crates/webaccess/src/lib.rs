//! IO, file formats and the `wat` command line on top of
//! [`webaccess_core`].
//!
//! * [`io`]: reading and writing access logs
//! * [`formats`]: `trained.dat`, `am_test.dat`, alert reports and graph dumps
//! * [`cli`]: the subcommands and their exit codes
//! * [`bench`]: scaling comparison between the table detector and the graph baseline

pub mod bench;
pub mod cli;
pub mod config;
pub mod formats;
pub mod io;

pub use cli::{run, ExitStatus};

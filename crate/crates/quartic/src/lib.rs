//! Command-line driver, parallel orbit expansion and output formats for
//! [`quartic_core`].

pub mod cli;
pub mod parallel;
pub mod records;

pub use cli::{dispatch, parse_invocation, run, Format, Invocation};
pub use parallel::Parallel;

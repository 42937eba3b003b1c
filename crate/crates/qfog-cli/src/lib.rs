//! Engine behind the `qfog` command line: sweep tables, the best-phase
//! search, and the brute-force validation suite.

pub mod config;
pub mod optimize;
pub mod sweep;
pub mod validate;

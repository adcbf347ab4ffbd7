//! File formats, caching, parallel checks, seeded sampling and the command
//! line for `confpair-core`.

pub mod cache;
pub mod cli;
pub mod error;
pub mod json;
pub mod parallel;
pub mod report;
pub mod sample;

pub use error::{CliError, Result};

//! File formats, configuration, worker fan-out and the `mindist` command
//! line on top of [`mindist_core`].

pub mod codespec;
pub mod config;
pub mod error;
pub mod parallel;
pub mod report;
pub mod runner;
pub mod table;

pub use codespec::CodeSpec;
pub use error::{exit, Error, Result};
pub use report::{DistanceEstimate, SCHEMA, SCHEMA_VERSION};
pub use runner::{estimate, RunOptions};

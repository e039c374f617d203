//! Batch driver behind the `solenoid` binary.

pub mod config;
pub mod report;
pub mod run;

pub use config::{ConfigError, SessionConfig, SUITES};
pub use report::{without_timing, Report, Status, SuiteResult, Timing};
pub use run::{run, run_suite, Command, EXIT_CONFIG};

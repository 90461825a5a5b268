//! Suite runner for the `hspin-core` identities: case grids, a case-parallel
//! executor, the floating-point δ-normalization check, and JSON/text reports.

pub mod config;
pub mod delta;
pub mod report;
pub mod suites;

pub use config::SuiteConfig;
pub use report::{emit_report, Format, Report, Status};
pub use suites::run_suite;

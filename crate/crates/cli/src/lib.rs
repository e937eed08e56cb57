//! Job language, runner and reports for ramislope.

pub mod dsl;
pub mod emit;
pub mod job;
pub mod report;
pub mod run;

pub use dsl::{parse_job, DslError};
pub use emit::{emit_report, parse_report, summary, Format};
pub use job::Job;
pub use report::Report;
pub use run::run_job;

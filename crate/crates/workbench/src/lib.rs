//! Enumeration, verification campaigns, reports and the `nsg` command line
//! on top of `nsg-core`.

pub mod checks;
pub mod cli;
pub mod enumerate;
pub mod job;
pub mod report;
pub mod verify;

pub use checks::{parse_checks, Analysis, CheckId};
pub use enumerate::{enumerate_by_frobenius, enumerate_by_genus, enumerate_ci_by_frobenius, genus_counts, TreeBound, TreeWalker};
pub use job::{EnumerationJob, Filter, JobError, Mode, ResumeToken};
pub use report::{ReportRecord, CSV_HEADER};
pub use verify::{run_enumeration, run_verification, VerificationSummary, VerifyOptions};

//! Document parsing, command execution, reports and the seeded corpus for the
//! `homkoszul` command line tool.

pub mod commands;
pub mod corpus;
pub mod document;
pub mod error;
pub mod report;

pub use commands::{limits_from_env, run_corpus, run_report, Bounds, Command};
pub use corpus::{random_corpus, CorpusParams};
pub use document::{parse_presentation, PresentationDocument};
pub use error::{CliError, Result};
pub use report::{CheckResult, Report};

//! Configuration loading, command dispatch and reports for the `squanta`
//! binary.

pub mod commands;
pub mod report;
pub mod workspace;

use thiserror::Error;

pub use commands::{run, Command, Options};
pub use report::{Line, Report, Status};
pub use workspace::{load, load_sources, load_with_fixtures, Workspace};

/// Exit status for a run whose checks all pass.
pub const EXIT_OK: i32 = 0;
/// Exit status when a check fails or a structure violates a law.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit status for malformed input or usage errors.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}: {message}")]
    Io { file: String, message: String },
    #[error("{file}:{line}:{column}: parse error: {message}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{file}:{line}: duplicate name `{name}` (already defined in {first})")]
    DuplicateName {
        name: String,
        file: String,
        line: usize,
        first: String,
    },
    #[error("{file}:{line}: `{name}` refers to `{reference}`, which is undefined or part of a reference cycle")]
    DanglingReference {
        name: String,
        reference: String,
        file: String,
        line: usize,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] squanta_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_violation() => EXIT_VIOLATION,
            _ => EXIT_INPUT,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "Io",
            CliError::Parse { .. } => "ParseError",
            CliError::DuplicateName { .. } => "DuplicateName",
            CliError::DanglingReference { .. } => "DanglingReference",
            CliError::Usage(_) => "Usage",
            CliError::Core(_) => "Violation",
        }
    }
}

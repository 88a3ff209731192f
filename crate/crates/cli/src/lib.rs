//! Front end shared by the `tropical-heights` binary and its tests: argument
//! definitions, JSON input decoding and one runner per command.
//!
//! Every command returns a [`Report`] (exit 0, or 1 when a requested check
//! failed) or an [`InputError`] (exit 2). Reports are assembled from sorted
//! data, so identical inputs give byte-identical output at any thread count.

pub mod args;
mod commands;
pub mod input;

use std::fmt;

use serde_json::Value;

pub use args::{Cli, Command};
pub use commands::corpus::{corpus_run, CorpusRow, CorpusSummary, Verdict};

#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Text(String),
    Json(Value),
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Output::Text(s) => writeln!(f, "{s}"),
            Output::Json(v) => writeln!(f, "{}", serde_json::to_string_pretty(v).expect("values are finite")),
        }
    }
}

/// Result of a command that ran to completion.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub output: Output,
    /// One line per failed check; non-empty means exit 1.
    pub failures: Vec<String>,
    /// Diagnostics for stderr that are not part of the deterministic output.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(output: Output) -> Self {
        Report { output, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            1
        }
    }
}

/// Rejected input, located by file and JSON path (or option name).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub file: Option<String>,
    pub path: String,
    pub message: String,
}

impl InputError {
    pub fn new(path: impl Into<String>, message: impl fmt::Display) -> Self {
        InputError { file: None, path: path.into(), message: message.to_string() }
    }

    pub fn in_file(mut self, file: &str) -> Self {
        self.file.get_or_insert_with(|| file.to_string());
        self
    }
}

impl From<graph_core::json::SchemaError> for InputError {
    fn from(e: graph_core::json::SchemaError) -> Self {
        InputError::new(e.path, e.message)
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}: ")?;
        }
        if !self.path.is_empty() {
            write!(f, "{}: ", self.path)?;
        }
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for InputError {}

pub const EXIT_INPUT: i32 = 2;

pub fn run(cli: &Cli) -> Result<Report, InputError> {
    commands::dispatch(&cli.command)
}

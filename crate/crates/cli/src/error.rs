use std::fmt;
use std::io;

use thiserror::Error;

/// A syntax error in a sequence spec, at a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    /// The input with a caret under the offending byte.
    pub fn render(&self, input: &str) -> String {
        format!("{self}\n  {input}\n  {}^", " ".repeat(self.offset))
    }
}

/// A malformed b-file line (1-based line number).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfileError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for BfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for BfileError {}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Bfile { path: String, source: BfileError },
    #[error(transparent)]
    Core(#[from] binomid::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

//! Command-line front end for the `binomid` library: the sequence-spec
//! language, b-file ingestion, output formats and the subcommands.

pub mod bfile;
pub mod commands;
pub mod error;
pub mod render;
pub mod seqspec;

pub use bfile::{ingest_bfile, parse_bfile};
pub use commands::run;
pub use error::{BfileError, CliError, ParseError};
pub use render::Format;
pub use seqspec::{parse_seqspec, SeqSpec};

//! Reading sequences from local files.
//!
//! A b-file has one `index value` pair per line; `#` starts a comment and
//! blank lines are ignored. Indices must go up by exactly one. The first
//! kept line becomes index 1 of the resulting sequence.

use std::fs;
use std::path::Path;

use binomid::{BigInt, Sequence};
use num_traits::Zero;

use crate::error::{BfileError, CliError};

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Parses b-file text, dropping the first `skip` data lines.
pub fn parse_bfile(text: &str, skip: usize) -> Result<Vec<BigInt>, BfileError> {
    let err = |line, message: String| BfileError { line, message };
    let mut values = Vec::new();
    let mut prev: Option<BigInt> = None;
    for (pos, (line, content)) in data_lines(text).enumerate() {
        let mut tokens = content.split_whitespace();
        let (Some(index), Some(value), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(err(
                line,
                format!("expected 'index value', got '{content}'"),
            ));
        };
        let index: BigInt = index
            .parse()
            .map_err(|_| err(line, format!("bad index '{index}'")))?;
        let value: BigInt = value
            .parse()
            .map_err(|_| err(line, format!("bad value '{value}'")))?;
        if let Some(p) = &prev {
            if index != p + 1u32 {
                return Err(err(line, format!("gap: index {index} follows {p}")));
            }
        }
        prev = Some(index);
        if pos < skip {
            continue;
        }
        if value.is_zero() {
            return Err(err(line, "zero term".into()));
        }
        values.push(value);
    }
    if values.is_empty() {
        return Err(err(text.lines().count().max(1), "no data lines".into()));
    }
    Ok(values)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a b-file into a finite sequence named `bfile:<path>`.
pub fn ingest_bfile(path: &Path, skip: usize) -> Result<Sequence, CliError> {
    let values = parse_bfile(&read(path)?, skip).map_err(|source| CliError::Bfile {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Sequence::from_list_named(
        format!("bfile:{}", path.display()),
        values,
    )?)
}

/// Parses a plain list of integers separated by whitespace or commas.
pub fn parse_plain(text: &str) -> Result<Vec<BigInt>, BfileError> {
    let mut values = Vec::new();
    for (line, content) in data_lines(text) {
        for token in content
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let value: BigInt = token.parse().map_err(|_| BfileError {
                line,
                message: format!("bad value '{token}'"),
            })?;
            if value.is_zero() {
                return Err(BfileError {
                    line,
                    message: "zero term".into(),
                });
            }
            values.push(value);
        }
    }
    if values.is_empty() {
        return Err(BfileError {
            line: 1,
            message: "no values".into(),
        });
    }
    Ok(values)
}

pub fn read_plain(path: &Path) -> Result<Vec<BigInt>, CliError> {
    parse_plain(&read(path)?).map_err(|source| CliError::Bfile {
        path: path.display().to_string(),
        source,
    })
}

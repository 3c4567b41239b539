//! The sequence-spec mini language.
//!
//! ```text
//! spec := atom | "product(" spec "," spec ")" | "scalar(" int "," spec ")"
//!       | "pow(" uint "," spec ")" | "P(" spec ")" | "col(" uint "," spec ")"
//!       | "row(" uint "," spec ")" | "prepend1(" spec ")"
//!       | "interleave1(" spec ")" | "double(" spec ")"
//! atom := "I" | "fact" | "T" | "fib" | "phi" | "const:" int | "cpow:" int
//!       | "pcol:" uint | "prow:" uint | "gq:" int | "gab:" int "," int
//!       | "lucas:" int "," int | "hm:" uint | "list:" int ("," int)*
//!       | "file:" path | "bfile:" path
//! ```
//!
//! `list:` is greedy: it keeps taking comma-separated integers as long as
//! the next item parses as one. Paths run to the next `,` or `)`.
//! Whitespace between tokens is ignored.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use binomid::sequences::{self as seqs, Sequence};
use binomid::triangle::{col_seq, row_seq};
use binomid::BigInt;

use crate::bfile;
use crate::error::{CliError, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqSpec {
    Identity,
    Factorial,
    Triangular,
    Fibonacci,
    Phi,
    Const(BigInt),
    Cpow(BigInt),
    PascalColumn(usize),
    PascalRow(usize),
    Gq(BigInt),
    Gab(BigInt, BigInt),
    Lucas(BigInt, BigInt),
    Hm(usize),
    List(Vec<BigInt>),
    File(String),
    Bfile(String),
    Product(Box<SeqSpec>, Box<SeqSpec>),
    Scalar(BigInt, Box<SeqSpec>),
    Pow(u32, Box<SeqSpec>),
    DivisorProduct(Box<SeqSpec>),
    Col(usize, Box<SeqSpec>),
    Row(usize, Box<SeqSpec>),
    Prepend1(Box<SeqSpec>),
    Interleave1(Box<SeqSpec>),
    Double(Box<SeqSpec>),
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SeqSpec::*;
        match self {
            Identity => f.write_str("I"),
            Factorial => f.write_str("fact"),
            Triangular => f.write_str("T"),
            Fibonacci => f.write_str("fib"),
            Phi => f.write_str("phi"),
            Const(c) => write!(f, "const:{c}"),
            Cpow(c) => write!(f, "cpow:{c}"),
            PascalColumn(m) => write!(f, "pcol:{m}"),
            PascalRow(m) => write!(f, "prow:{m}"),
            Gq(q) => write!(f, "gq:{q}"),
            Gab(a, b) => write!(f, "gab:{a},{b}"),
            Lucas(p, q) => write!(f, "lucas:{p},{q}"),
            Hm(m) => write!(f, "hm:{m}"),
            List(v) => {
                f.write_str("list:")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            File(p) => write!(f, "file:{p}"),
            Bfile(p) => write!(f, "bfile:{p}"),
            Product(a, b) => write!(f, "product({a},{b})"),
            Scalar(c, s) => write!(f, "scalar({c},{s})"),
            Pow(e, s) => write!(f, "pow({e},{s})"),
            DivisorProduct(s) => write!(f, "P({s})"),
            Col(j, s) => write!(f, "col({j},{s})"),
            Row(m, s) => write!(f, "row({m},{s})"),
            Prepend1(s) => write!(f, "prepend1({s})"),
            Interleave1(s) => write!(f, "interleave1({s})"),
            Double(s) => write!(f, "double({s})"),
        }
    }
}

impl FromStr for SeqSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_seqspec(s)
    }
}

pub fn parse_seqspec(text: &str) -> Result<SeqSpec, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty sequence spec"));
    }
    let spec = p.spec()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    /// Length of an integer literal at the cursor, without consuming it.
    fn peek_int(&self) -> Option<usize> {
        let rest = self.rest().trim_start();
        let ws = self.rest().len() - rest.len();
        let sign = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign..].bytes().take_while(u8::is_ascii_digit).count();
        (digits > 0).then_some(ws + sign + digits)
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let len = self
            .peek_int()
            .ok_or_else(|| self.error("expected an integer"))?;
        let text = &self.rest()[..len];
        let value = text
            .trim_start_matches('+')
            .parse()
            .map_err(|_| self.error("bad integer"))?;
        self.pos += len;
        Ok(value)
    }

    fn uint<T: TryFrom<u64>>(&mut self) -> Result<T, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a nonnegative integer"));
        }
        let text = &self.rest()[..digits];
        self.pos += digits;
        text.parse::<u64>()
            .ok()
            .and_then(|v| T::try_from(v).ok())
            .ok_or(ParseError {
                offset: start,
                message: format!("integer {text} out of range"),
            })
    }

    fn path(&mut self) -> Result<String, ParseError> {
        let rest = self.rest();
        let len = rest.find([',', ')']).unwrap_or(rest.len());
        let path = rest[..len].trim();
        if path.is_empty() {
            return Err(self.error("expected a file path"));
        }
        self.pos += len;
        Ok(path.to_string())
    }

    fn spec(&mut self) -> Result<SeqSpec, ParseError> {
        use SeqSpec::*;
        self.skip_ws();
        let start = self.pos;
        let name = self.ident();
        if name.is_empty() {
            return Err(self.error("expected a sequence name"));
        }
        if self.rest().starts_with('(') {
            self.pos += 1;
            let spec = match name {
                "product" => {
                    let a = self.spec()?;
                    self.expect(',')?;
                    Product(Box::new(a), Box::new(self.spec()?))
                }
                "scalar" => {
                    let c = self.int()?;
                    self.expect(',')?;
                    Scalar(c, Box::new(self.spec()?))
                }
                "pow" => {
                    let e = self.uint()?;
                    self.expect(',')?;
                    Pow(e, Box::new(self.spec()?))
                }
                "col" | "row" => {
                    let i = self.uint()?;
                    self.expect(',')?;
                    let inner = Box::new(self.spec()?);
                    if name == "col" {
                        Col(i, inner)
                    } else {
                        Row(i, inner)
                    }
                }
                "P" => DivisorProduct(Box::new(self.spec()?)),
                "prepend1" => Prepend1(Box::new(self.spec()?)),
                "interleave1" => Interleave1(Box::new(self.spec()?)),
                "double" => Double(Box::new(self.spec()?)),
                _ => {
                    return Err(ParseError {
                        offset: start,
                        message: format!("unknown combinator '{name}'"),
                    })
                }
            };
            self.expect(')')?;
            return Ok(spec);
        }
        if self.rest().starts_with(':') {
            self.pos += 1;
            return Ok(match name {
                "const" => Const(self.int()?),
                "cpow" => Cpow(self.int()?),
                "pcol" => PascalColumn(self.uint()?),
                "prow" => PascalRow(self.uint()?),
                "gq" => Gq(self.int()?),
                "hm" => Hm(self.uint()?),
                "gab" | "lucas" => {
                    let a = self.int()?;
                    self.expect(',')?;
                    let b = self.int()?;
                    if name == "gab" {
                        Gab(a, b)
                    } else {
                        Lucas(a, b)
                    }
                }
                "list" => {
                    let mut values = vec![self.int()?];
                    loop {
                        let save = self.pos;
                        if !self.eat(',') {
                            break;
                        }
                        if self.peek_int().is_none() {
                            self.pos = save;
                            break;
                        }
                        values.push(self.int()?);
                    }
                    List(values)
                }
                "file" => File(self.path()?),
                "bfile" => Bfile(self.path()?),
                _ => {
                    return Err(ParseError {
                        offset: start,
                        message: format!("unknown atom '{name}:'"),
                    })
                }
            });
        }
        match name {
            "I" => Ok(Identity),
            "fact" => Ok(Factorial),
            "T" => Ok(Triangular),
            "fib" => Ok(Fibonacci),
            "phi" => Ok(Phi),
            _ => Err(ParseError {
                offset: start,
                message: format!("unknown sequence '{name}'"),
            }),
        }
    }
}

impl SeqSpec {
    /// Builds the sequence. Term-level problems (zero terms, non-integral
    /// row or column entries) surface later, when the terms are read.
    pub fn evaluate(&self) -> Result<Sequence, CliError> {
        self.evaluate_with(0)
    }

    /// As [`evaluate`](Self::evaluate), dropping the first `bfile_skip`
    /// data lines of every `bfile:` input.
    pub fn evaluate_with(&self, bfile_skip: usize) -> Result<Sequence, CliError> {
        use SeqSpec::*;
        let seq = match self {
            Identity => seqs::identity_seq(),
            Factorial => seqs::factorial_seq(),
            Triangular => seqs::triangular_seq(),
            Fibonacci => seqs::fibonacci(),
            Phi => seqs::euler_phi_seq(),
            Const(c) => seqs::const_seq(c.clone())?,
            Cpow(c) => seqs::power_seq(c.clone())?,
            PascalColumn(m) => seqs::pascal_column(*m),
            PascalRow(m) => seqs::pascal_row(*m),
            Gq(q) => seqs::gq(q.clone())?,
            Gab(a, b) => seqs::g_ab(a.clone(), b.clone())?,
            Lucas(p, q) => seqs::lucas(p.clone(), q.clone())?,
            Hm(m) => seqs::h_m(*m)?,
            List(v) => Sequence::from_list(v.clone())?,
            File(path) => {
                Sequence::from_list_named(self.to_string(), bfile::read_plain(Path::new(path))?)?
            }
            Bfile(path) => bfile::ingest_bfile(Path::new(path), bfile_skip)?,
            Product(a, b) => {
                seqs::product(&a.evaluate_with(bfile_skip)?, &b.evaluate_with(bfile_skip)?)
            }
            Scalar(c, s) => seqs::scalar(c.clone(), &s.evaluate_with(bfile_skip)?)?,
            Pow(e, s) => seqs::compose_power(*e, &s.evaluate_with(bfile_skip)?),
            DivisorProduct(s) => seqs::divisor_product_of(&s.evaluate_with(bfile_skip)?),
            Col(j, s) => col_seq(&s.evaluate_with(bfile_skip)?, *j)?,
            Row(m, s) => row_seq(&s.evaluate_with(bfile_skip)?, *m)?,
            Prepend1(s) => seqs::prepend_one(&s.evaluate_with(bfile_skip)?),
            Interleave1(s) => seqs::interleave_ones(&s.evaluate_with(bfile_skip)?),
            Double(s) => seqs::double_terms(&s.evaluate_with(bfile_skip)?),
        };
        Ok(seq)
    }
}

//! Argument parsing and the subcommands.

use std::ffi::OsString;
use std::io::Write;

use binomid::classify::{self, ClassificationReport};
use binomid::verify::{self, CheckReport, RecurrenceOutcome};
use binomid::{pyramid, triangle, BigInt, Error, Sequence};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;

use crate::error::CliError;
use crate::render::{self, to_json_line, Format};
use crate::seqspec::{parse_seqspec, SeqSpec};

/// Exact generalized binomial coefficients and sequence classification.
#[derive(Debug, Parser)]
#[command(name = "binomid", version)]
pub struct Cli {
    /// Data lines to drop from the start of every `bfile:` input.
    #[arg(long, global = true, default_value_t = 0)]
    pub bfile_skip: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first terms of a sequence.
    Terms {
        spec: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Print the triangle of f-binomial coefficients down to row N.
    Triangle {
        spec: String,
        #[arg(long)]
        rows: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the pyramid: slice m is the triangle of row m.
    Pyramid {
        spec: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check divisibility properties up to a bound.
    Classify {
        spec: String,
        #[arg(long)]
        bound: usize,
        /// Check columns 1..=D and the every-level property to depth D.
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Comma-separated subset of properties (default: all).
        #[arg(long, value_enum, value_delimiter = ',')]
        only: Vec<PropertyName>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Multiplicative Möbius inversion: the g with f = P(g).
    Invert {
        spec: String,
        #[arg(long)]
        terms: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run an identity checker.
    Verify {
        #[arg(long, value_enum, global = true, default_value_t)]
        format: Format,
        #[command(subcommand)]
        check: Check,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PropertyName {
    Binomid,
    BinomidAtLevel,
    BinomidEveryLevel,
    DivisorChain,
    Divisible,
    GcdSequence,
    DualGcd,
    DivisorProduct,
    Multiplicative,
    Homomorphic,
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// delta_{m,r} is r-m zeros then m ones, repeated.
    DeltaPattern { m: usize, r: usize, length: usize },
    /// The first n values of delta_{m,r} have the least window sum.
    WindowMinimality {
        m: usize,
        r: usize,
        n_max: usize,
        a_max: usize,
    },
    /// Exponents of the generic factorial <n>.
    GenericFactorial { n: usize },
    /// Exponents of entry [n k] of slice column m of the generic triangle.
    PyramidEntry { m: usize, n: usize, k: usize },
    /// All generic pyramid entries up to the given sizes are monomials.
    GenericPyramid { m_max: usize, n_max: usize },
    /// Column c equals row N-c for a palindromic finite sequence.
    Symmetry { spec: String },
    /// [n k] over column m equals [n k] and [k+m m] over row n+m-1.
    SliceIdentity {
        spec: String,
        n_max: usize,
        m_max: usize,
        k_max: usize,
    },
    /// det[binom(n+i, m+j)] = [n-m+k k] over Pascal column m.
    Determinant { n: usize, m: usize, k: usize },
    /// The determinant identity over a range.
    DeterminantRange {
        n_max: usize,
        m_max: usize,
        k_max: usize,
    },
    /// a^n - b^n is the product of Phi_d(a, b) over d | n.
    CyclotomicProduct { n_max: u64, ab_max: i64 },
    /// f_{n+1} = u f_{n-k+1} + v f_k gives [n+1 k] = u [n k] + v [n k-1].
    Recurrence {
        spec: String,
        n: usize,
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<BigInt>,
    },
    /// Factorials and coefficients of H_m(n) = binom(mn, m).
    Hm { m: usize, n: usize, k: usize },
}

/// Runs the command line `args` (program name first). Returns the exit
/// code: 0 success, 1 a property or identity failed, 2 bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Spec { input, error }) => {
            let _ = writeln!(err, "error: {}", error.render(&input));
            2
        }
        Err(Failure::Cli(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

enum Failure {
    Spec {
        input: String,
        error: crate::error::ParseError,
    },
    Cli(CliError),
    Io(std::io::Error),
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure::Cli(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Cli(CliError::Core(e))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn load(input: &str, skip: usize) -> Result<(SeqSpec, Sequence), Failure> {
    let spec = parse_seqspec(input).map_err(|error| Failure::Spec {
        input: input.to_string(),
        error,
    })?;
    let seq = spec.evaluate_with(skip)?;
    Ok((spec, seq))
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let skip = cli.bfile_skip;
    match &cli.command {
        Command::Terms { spec, count } => {
            let (_, f) = load(spec, skip)?;
            let n = f.available(*count);
            let terms: Vec<String> = f.prefix(n)?.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", terms.join(" "))?;
            Ok(0)
        }
        Command::Triangle { spec, rows, format } => {
            let (spec, f) = load(spec, skip)?;
            let tri = triangle(&f, *rows)?;
            out.write_all(render::render_triangle(&spec.to_string(), &tri, *format).as_bytes())?;
            Ok(0)
        }
        Command::Pyramid {
            spec,
            depth,
            format,
        } => {
            let (spec, f) = load(spec, skip)?;
            let pyr = pyramid(&f, *depth)?;
            out.write_all(render::render_pyramid(&spec.to_string(), &pyr, *format).as_bytes())?;
            Ok(0)
        }
        Command::Classify {
            spec,
            bound,
            levels,
            only,
            format,
        } => {
            let (_, f) = load(spec, skip)?;
            let (reports, skipped) = classify_battery(&f, *bound, *levels, only)?;
            for note in skipped {
                writeln!(err, "note: {note}")?;
            }
            out.write_all(render::render_reports(&reports, *format).as_bytes())?;
            Ok(if reports.iter().any(ClassificationReport::fails) {
                1
            } else {
                0
            })
        }
        Command::Invert {
            spec,
            terms,
            format,
        } => {
            let (_, f) = load(spec, skip)?;
            let n = f.available(*terms);
            let g = classify::mobius_invert(&f, n)?;
            let text = match format {
                Format::Json => to_json_line(&g),
                Format::Csv => {
                    g.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                        + "\n"
                }
                Format::Text => {
                    g.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                        + "\n"
                }
            };
            out.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Verify { format, check } => run_check(check, *format, skip, out),
    }
}

/// Runs the selected properties. Level properties need `f_1 = 1`; for other
/// inputs they are skipped with a note instead of failing the whole run.
pub fn classify_battery(
    f: &Sequence,
    bound: usize,
    levels: usize,
    only: &[PropertyName],
) -> Result<(Vec<ClassificationReport>, Vec<String>), Error> {
    let wanted = |p: PropertyName| only.is_empty() || only.contains(&p);
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    let level_ok = f.term(1)?.is_one();
    if wanted(PropertyName::Binomid) {
        reports.push(classify::is_binomid(f, bound)?);
    }
    if wanted(PropertyName::BinomidAtLevel) || wanted(PropertyName::BinomidEveryLevel) {
        if !level_ok {
            skipped.push(format!(
                "level properties skipped: f(1) = {}, not 1",
                f.term(1)?
            ));
        } else {
            if wanted(PropertyName::BinomidAtLevel) {
                for c in 1..=levels {
                    reports.push(classify::is_binomid_at_level(f, c, bound)?);
                }
            }
            if wanted(PropertyName::BinomidEveryLevel) {
                reports.push(classify::is_binomid_every_level(f, levels, bound)?);
            }
        }
    }
    type Classifier = fn(&Sequence, usize) -> binomid::Result<ClassificationReport>;
    let rest: [(PropertyName, Classifier); 7] = [
        (PropertyName::DivisorChain, classify::is_divisor_chain),
        (PropertyName::Divisible, classify::is_divisible),
        (PropertyName::GcdSequence, classify::is_gcd_sequence),
        (PropertyName::DualGcd, classify::is_dual_gcd),
        (PropertyName::DivisorProduct, classify::is_divisor_product),
        (PropertyName::Multiplicative, classify::is_multiplicative),
        (PropertyName::Homomorphic, classify::is_homomorphic),
    ];
    for (name, check) in rest {
        if wanted(name) {
            reports.push(check(f, bound)?);
        }
    }
    Ok((reports, skipped))
}

fn emit_check(report: &CheckReport, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = match format {
        Format::Json => to_json_line(report),
        _ => format!("{report}\n"),
    };
    out.write_all(text.as_bytes())?;
    Ok(if report.holds() { 0 } else { 1 })
}

fn run_check(
    check: &Check,
    format: Format,
    skip: usize,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let report = match check {
        Check::DeltaPattern { m, r, length } => verify::check_delta_pattern(*m, *r, *length)?,
        Check::WindowMinimality { m, r, n_max, a_max } => {
            verify::check_window_minimality(*m, *r, *n_max, *a_max)?
        }
        Check::GenericFactorial { n } => {
            let v = verify::generic_factorial_exponents(*n);
            let text = if format == Format::Json {
                to_json_line(&v)
            } else {
                format!("{v}\n")
            };
            out.write_all(text.as_bytes())?;
            return Ok(0);
        }
        Check::PyramidEntry { m, n, k } => {
            let v = verify::generic_pyramid_entry(*m, *n, *k)?;
            let text = if format == Format::Json {
                to_json_line(&v)
            } else {
                format!("{v}\n")
            };
            out.write_all(text.as_bytes())?;
            return Ok(0);
        }
        Check::GenericPyramid { m_max, n_max } => verify::check_generic_pyramid(*m_max, *n_max)?,
        Check::Symmetry { spec } => verify::check_symmetry(&load(spec, skip)?.1)?,
        Check::SliceIdentity {
            spec,
            n_max,
            m_max,
            k_max,
        } => verify::check_slice_identity(&load(spec, skip)?.1, *n_max, *m_max, *k_max)?,
        Check::Determinant { n, m, k } => verify::check_determinant_identity(*n, *m, *k)?,
        Check::DeterminantRange {
            n_max,
            m_max,
            k_max,
        } => verify::check_determinant_range(*n_max, *m_max, *k_max)?,
        Check::CyclotomicProduct { n_max, ab_max } => {
            verify::check_cyclotomic_product(*n_max, *ab_max)?
        }
        Check::Recurrence { spec, n, k, u, v } => {
            let f = load(spec, skip)?.1;
            let r = verify::check_recurrence_step(&f, *n, *k, u.clone(), v.clone())?;
            let text = match format {
                Format::Json => to_json_line(&r),
                _ => {
                    let uv = match (&r.u, &r.v) {
                        (Some(u), Some(v)) => format!(" with u={u}, v={v}"),
                        _ => String::new(),
                    };
                    let what = match &r.outcome {
                        RecurrenceOutcome::Holds => "holds".to_string(),
                        RecurrenceOutcome::NoCertificate => {
                            "no integer certificate (u, v)".to_string()
                        }
                        RecurrenceOutcome::HypothesisFails { lhs, rhs } => {
                            format!("hypothesis fails: f(n+1) = {lhs}, u f(n-k+1) + v f(k) = {rhs}")
                        }
                        RecurrenceOutcome::ConclusionFails { lhs, rhs } => {
                            format!("conclusion fails: {lhs} != {rhs}")
                        }
                    };
                    format!("recurrence(n={n}, k={k}){uv}: {what}\n")
                }
            };
            out.write_all(text.as_bytes())?;
            return Ok(match r.outcome {
                RecurrenceOutcome::Holds | RecurrenceOutcome::NoCertificate => 0,
                _ => 1,
            });
        }
        Check::Hm { m, n, k } => verify::check_hm_identity(*m, *n, *k)?,
    };
    emit_check(&report, format, out)
}

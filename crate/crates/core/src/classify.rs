//! Bounded decision procedures for the divisibility hierarchy.
//!
//! Every classifier checks its defining condition on all index tuples up to
//! an explicit bound and returns a [`ClassificationReport`]. A report never
//! claims more than `holds_to_bound`; a failing report always carries the
//! lexicographically smallest violation as its witness, ordered by the
//! largest index involved and then by the smaller one.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{self, divisors, mobius, prime_power};
use crate::rational::ExactRational;
use crate::sequences::Sequence;
use crate::triangle::{col_seq, row_seq, triangle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Property {
    Binomid,
    BinomidAtLevel(usize),
    BinomidEveryLevel { depth: usize },
    DivisorChain,
    Divisible,
    GcdSequence,
    DualGcd,
    DivisorProduct,
    Multiplicative,
    Homomorphic,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Binomid => f.write_str("binomid"),
            Property::BinomidAtLevel(c) => write!(f, "binomid_at_level({c})"),
            Property::BinomidEveryLevel { .. } => f.write_str("binomid_every_level"),
            Property::DivisorChain => f.write_str("divisor_chain"),
            Property::Divisible => f.write_str("divisible"),
            Property::GcdSequence => f.write_str("gcd_sequence"),
            Property::DualGcd => f.write_str("dual_gcd"),
            Property::DivisorProduct => f.write_str("divisor_product"),
            Property::Multiplicative => f.write_str("multiplicative"),
            Property::Homomorphic => f.write_str("homomorphic"),
        }
    }
}

impl Serialize for Property {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HoldsToBound,
    Fails,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HoldsToBound => "holds_to_bound",
            Verdict::Fails => "fails",
        })
    }
}

fn str_big<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// A concrete counterexample. Indices are 1-based sequence indices unless
/// stated otherwise; big integers serialize as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `[n k]` of the tested sequence is `value`, not an integer. In window
    /// form: `f_1..f_k` does not divide `f_{m+1}..f_{m+k}` with `m = n - k`.
    Coefficient {
        n: usize,
        k: usize,
        m: usize,
        value: ExactRational,
    },
    /// The entry `[n k]_f` needed to build a row or column is not an integer.
    SourceEntry {
        n: usize,
        k: usize,
        value: ExactRational,
    },
    /// Failure inside column `level` of `Δ(f)`.
    Level { level: usize, inner: Box<Witness> },
    /// Failure inside slice `slice` of the pyramid (the triangle of row
    /// `slice` of `Δ(f)`).
    Slice { slice: usize, inner: Box<Witness> },
    /// `f_n` does not divide `f_{n+1}`.
    Chain {
        n: usize,
        #[serde(serialize_with = "str_big")]
        quotient_den: BigInt,
    },
    /// `k | n` but `f_k` does not divide `f_n`.
    Divisibility { k: usize, n: usize },
    /// `gcd(f_m, f_n) != |f_gcd(m,n)|`.
    Gcd {
        m: usize,
        n: usize,
        #[serde(serialize_with = "str_big")]
        gcd: BigInt,
        #[serde(serialize_with = "str_big")]
        expected: BigInt,
    },
    /// `gcd(f_m, f_n)` does not divide `f_{m+n}`.
    DualGcd {
        m: usize,
        n: usize,
        #[serde(serialize_with = "str_big")]
        gcd: BigInt,
    },
    /// The Möbius inverse `g(n)` is not an integer.
    DivisorProduct { n: usize, value: ExactRational },
    /// `f(ab) != f(a) f(b)` for coprime `a, b`.
    Multiplicative { a: usize, b: usize },
    /// `f(ab) != f(a) f(b)`.
    Homomorphic { a: usize, b: usize },
    /// `s_b(m) + s_b(n) > s_b(m+n)` for the partial sums `s_b`.
    Superadditive {
        m: usize,
        n: usize,
        lhs: i64,
        rhs: i64,
    },
}

impl Witness {
    fn coefficient(n: usize, k: usize, value: ExactRational) -> Self {
        Witness::Coefficient {
            n,
            k,
            m: n - k,
            value,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Coefficient { n, k, m, value } => {
                write!(f, "[{n} {k}] = {value} (m={m}, k={k})")
            }
            Witness::SourceEntry { n, k, value } => {
                write!(f, "entry [{n} {k}] of the source triangle = {value}")
            }
            Witness::Level { level, inner } => write!(f, "level {level}, {inner}"),
            Witness::Slice { slice, inner } => write!(f, "slice {slice}, {inner}"),
            Witness::Chain { n, .. } => write!(f, "f({n}) does not divide f({})", n + 1),
            Witness::Divisibility { k, n } => {
                write!(f, "{k} | {n} but f({k}) does not divide f({n})")
            }
            Witness::Gcd {
                m,
                n,
                gcd,
                expected,
            } => {
                write!(
                    f,
                    "gcd(f({m}), f({n})) = {gcd} but |f(gcd({m},{n}))| = {expected}"
                )
            }
            Witness::DualGcd { m, n, gcd } => {
                write!(
                    f,
                    "gcd(f({m}), f({n})) = {gcd} does not divide f({})",
                    m + n
                )
            }
            Witness::DivisorProduct { n, value } => write!(f, "g({n}) = {value}"),
            Witness::Multiplicative { a, b } | Witness::Homomorphic { a, b } => {
                write!(f, "f({}) != f({a}) f({b})", a * b)
            }
            Witness::Superadditive { m, n, lhs, rhs } => {
                write!(f, "s({m}) + s({n}) = {lhs} > s({}) = {rhs}", m + n)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub property: Property,
    /// The requested bound.
    pub bound: usize,
    /// The bound actually checked; smaller when a finite sequence ran out.
    pub effective_bound: usize,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ClassificationReport {
    fn new(
        property: Property,
        bound: usize,
        effective_bound: usize,
        witness: Option<Witness>,
    ) -> Self {
        let verdict = if witness.is_some() {
            Verdict::Fails
        } else {
            Verdict::HoldsToBound
        };
        let mut notes = Vec::new();
        if effective_bound < bound {
            notes.push(format!(
                "sequence is finite; bound reduced from {bound} to {effective_bound}"
            ));
        }
        Self {
            property,
            bound,
            effective_bound,
            verdict,
            witness,
            notes,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsToBound
    }

    pub fn fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} (bound {})",
            self.property, self.verdict, self.effective_bound
        )?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

fn factorials(terms: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(terms.len() + 1);
    out.push(BigInt::one());
    for t in terms {
        let next = out.last().unwrap() * t;
        out.push(next);
    }
    out
}

fn divides(d: &BigInt, n: &BigInt) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        (n % d).is_zero()
    }
}

/// Window form: first `(n, k)` with `⟨k⟩` not dividing `f_{n-k+1} .. f_n`.
fn first_window_failure(terms: &[BigInt]) -> Option<Witness> {
    let fact = factorials(terms);
    for n in 2..=terms.len() {
        for k in 1..n {
            // f_{m+1} .. f_n = ⟨n⟩ / ⟨m⟩, an exact division.
            let window = &fact[n] / &fact[n - k];
            if !divides(&fact[k], &window) {
                let value = ExactRational::new(window, fact[k].clone()).expect("nonzero factorial");
                return Some(Witness::coefficient(n, k, value));
            }
        }
    }
    None
}

/// Is `f` binomid up to `bound`? Checks the window criterion for every
/// `m + k <= bound` and cross-checks it against integrality of `Δ(f)`.
pub fn is_binomid(f: &Sequence, bound: usize) -> Result<ClassificationReport> {
    let eff = f.available(bound);
    let terms = f.prefix(eff)?;
    let witness = first_window_failure(&terms);
    let tri = triangle(f, eff)?;
    let by_triangle = tri
        .first_non_integral()
        .map(|(n, k, v)| Witness::coefficient(n, k, v.clone()));
    if witness != by_triangle {
        return Err(Error::Internal(format!(
            "window criterion ({witness:?}) and triangle integrality ({by_triangle:?}) disagree for {f}"
        )));
    }
    Ok(ClassificationReport::new(
        Property::Binomid,
        bound,
        eff,
        witness,
    ))
}

/// Is column `c` of `Δ(f)` binomid up to `bound`? Requires `f_1 = 1`.
pub fn is_binomid_at_level(f: &Sequence, c: usize, bound: usize) -> Result<ClassificationReport> {
    let property = Property::BinomidAtLevel(c);
    if c == 0 {
        return Ok(ClassificationReport::new(property, bound, bound, None)
            .with_note("column 0 is constant 1"));
    }
    let col = col_seq(f, c)?;
    let eff = col.available(bound);
    match col.prefix(eff) {
        Ok(_) => {}
        Err(Error::NonIntegral { n, k, value }) => {
            let witness = Witness::Level {
                level: c,
                inner: Box::new(Witness::SourceEntry { n, k, value }),
            };
            return Ok(ClassificationReport::new(
                property,
                bound,
                eff,
                Some(witness),
            ));
        }
        Err(e) => return Err(e),
    }
    let inner = is_binomid(&col, bound)?;
    let witness = inner.witness.map(|w| Witness::Level {
        level: c,
        inner: Box::new(w),
    });
    Ok(ClassificationReport::new(property, bound, eff, witness))
}

/// Location of a row-route failure: entry `[n k]` of `Δ(R_slice)`, or the
/// row itself when `[slice k]_f` is not integral (`n = None`).
struct RowFailure {
    slice: usize,
    n: Option<usize>,
    k: usize,
    witness: Witness,
}

fn first_row_failure(f: &Sequence, depth: usize) -> Result<Option<RowFailure>> {
    for m in 0..=depth {
        let row = match row_seq(f, m) {
            Ok(row) => row,
            Err(Error::NonIntegral { n, k, value }) => {
                return Ok(Some(RowFailure {
                    slice: m,
                    n: None,
                    k,
                    witness: Witness::Slice {
                        slice: m,
                        inner: Box::new(Witness::SourceEntry { n, k, value }),
                    },
                }))
            }
            Err(e) => return Err(e),
        };
        // The whole finite triangle of R_m, through its last row m + 1.
        let report = is_binomid(&row, m + 1)?;
        if let Some(w) = report.witness {
            let Witness::Coefficient { n, k, .. } = w else {
                unreachable!()
            };
            return Ok(Some(RowFailure {
                slice: m,
                n: Some(n),
                k,
                witness: Witness::Slice {
                    slice: m,
                    inner: Box::new(w),
                },
            }));
        }
    }
    Ok(None)
}

/// Is `f` binomid at every level, as far as columns `0..=depth` (each to
/// `bound`) and rows `0..=depth` can tell? Requires `f_1 = 1`.
///
/// The column route and the row route look at the same coefficients through
/// `[n k]_{C_c} = [n k]_{R_{n+c-1}}`; whenever a failure found by one route
/// lies inside the range of the other, the other must fail too.
pub fn is_binomid_every_level(
    f: &Sequence,
    depth: usize,
    bound: usize,
) -> Result<ClassificationReport> {
    let property = Property::BinomidEveryLevel { depth };
    // Rows and columns past the end of a finite sequence do not exist.
    let depth = f.available(depth);
    let mut column_failure = None;
    let mut eff = bound;
    for c in 0..=depth {
        let report = is_binomid_at_level(f, c, bound)?;
        eff = eff.min(report.effective_bound);
        if let Some(w) = report.witness {
            column_failure = Some((c, w));
            break;
        }
    }
    let row_failure = first_row_failure(f, depth)?;

    // A row-route failure at [n k] of Δ(R_m) is [n k] of column m - n + 1,
    // and a bad row entry [m k]_f is term m - k + 1 of column k.
    if let Some(rf) = &row_failure {
        let (level, index) = match rf.n {
            Some(n) => (rf.slice + 1 - n, n),
            None => (rf.k, rf.slice + 1 - rf.k),
        };
        let covered = level <= depth && index <= eff;
        if covered && column_failure.as_ref().is_none_or(|(c, _)| *c > level) {
            return Err(Error::Internal(format!(
                "row route fails at slice {} but column {level} holds for {f}",
                rf.slice
            )));
        }
    }
    if let Some((c, w)) = &column_failure {
        let n = match w {
            Witness::Level { inner, .. } => match inner.as_ref() {
                Witness::Coefficient { n, .. } => Some(*n),
                _ => None,
            },
            _ => None,
        };
        if let Some(n) = n {
            let slice = n + c - 1;
            if slice <= depth && row_failure.is_none() {
                return Err(Error::Internal(format!(
                    "column {c} fails but slice {slice} is integral for {f}"
                )));
            }
        }
    }

    let witness = column_failure
        .map(|(_, w)| w)
        .or(row_failure.map(|rf| rf.witness));
    Ok(ClassificationReport::new(property, bound, eff, witness))
}

/// Is `f_n | f_{n+1}` for every `n + 1 <= bound`?
pub fn is_divisor_chain(f: &Sequence, bound: usize) -> Result<ClassificationReport> {
    let eff = f.available(bound);
    let terms = f.prefix(eff)?;
    let witness = terms.windows(2).enumerate().find_map(|(i, w)| {
        (!divides(&w[0], &w[1])).then(|| Witness::Chain {
            n: i + 1,
            quotient_den: &w[0] / w[0].gcd(&w[1]),
        })
    });
    Ok(ClassificationReport::new(
        Property::DivisorChain,
        bound,
        eff,
        witness,
    ))
}

/// The unique rational `g` with `f = P(g)` on `1..=count`:
/// `g(n) = ∏_{d | n} f(d)^{μ(n/d)}`.
pub fn mobius_invert(f: &Sequence, count: usize) -> Result<Vec<ExactRational>> {
    let terms = f.prefix(count)?;
    let mut g = Vec::with_capacity(count);
    for n in 1..=count {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for d in divisors(n as u64) {
            match mobius(n as u64 / d)? {
                1 => num *= &terms[d as usize - 1],
                -1 => den *= &terms[d as usize - 1],
                _ => {}
            }
        }
        g.push(ExactRational::new(num, den)?);
    }
    for n in 1..=count {
        let back = divisors(n as u64)
            .into_iter()
            .fold(ExactRational::one(), |acc, d| {
                acc * g[d as usize - 1].clone()
            });
        if back != ExactRational::from(terms[n - 1].clone()) {
            return Err(Error::Internal(format!(
                "P(g)({n}) = {back} != f({n}) for {f}"
            )));
        }
    }
    Ok(g)
}

/// Is `f = P(g)` for an integer sequence `g`, on `1..=bound`?
pub fn is_divisor_product(f: &Sequence, bound: usize) -> Result<ClassificationReport> {
    let eff = f.available(bound);
    let g = mobius_invert(f, eff)?;
    let witness = g
        .into_iter()
        .enumerate()
        .find(|(_, v)| !v.is_integer())
        .map(|(i, value)| Witness::DivisorProduct { n: i + 1, value });
    Ok(ClassificationReport::new(
        Property::DivisorProduct,
        bound,
        eff,
        witness,
    ))
}

/// `k | n` implies `f(k) | f(n)`, for `n <= bound`.
pub fn is_divisible(f: &Sequence, bound: usize) -> Result<ClassificationReport> {
    let eff = f.available(bound);
    let terms = f.prefix(eff)?;
    let mut witness = None;
    'outer: for n in 2..=eff {
        for k in divisors(n as u64) {
            let k = k as usize;
            if k < n && !divides(&terms[k - 1], &terms[n - 1]) {
                witness = Some(Witness::Divisibility { k, n });
                break 'outer;
            }
        }
    }
    Ok(ClassificationReport::new(
        Property::Divisible,
        bound,
        eff,
        witness,
    ))
}

/// `gcd(f_m, f_n) = |f_gcd(m,n)|` for `m, n <= bound`.
pub fn is_gcd_sequence(f: &Sequence, bound: usize) -> Result<ClassificationReport> {
    let eff = f.available(bound);
    let terms = f.prefix(eff)?;
    let mut witness = None;
    'outer: for n in 1..=eff {
        for m in 1..n {
            let gcd = terms[m - 1].gcd(&terms[n - 1]);
            let expected = terms[m.gcd(&n) - 1].abs();
            if gcd != expected {
                witness = Some(Witness::Gcd {
                    m,
                    n,
                    gcd,
                    expected,
                });
                break 'outer;
            }
        }
    }
    Ok(ClassificationReport::new(
        Property::GcdSequence,
        bound,
        eff,
        witness,
    ))
}

/// `gcd(f_m, f_n) | f_{m+n}` for `m + n <= bound`.
pub fn is_dual_gcd(f: &Sequence, bound: usize) -> Result<ClassificationReport> {
    let eff = f.available(bound);
    let terms = f.prefix(eff)?;
    let mut witness = None;
    'outer: for s in 2..=eff {
        for m in 1..=s / 2 {
            let n = s - m;
            let gcd = terms[m - 1].gcd(&terms[n - 1]);
            if !divides(&gcd, &terms[s - 1]) {
                witness = Some(Witness::DualGcd { m, n, gcd });
                break 'outer;
            }
        }
    }
    Ok(ClassificationReport::new(
        Property::DualGcd,
        bound,
        eff,
        witness,
    ))
}

fn first_product_failure(terms: &[BigInt], coprime_only: bool) -> Option<(usize, usize)> {
    let bound = terms.len();
    for ab in 1..=bound {
        for a in 1..=ab {
            if a * a > ab {
                break;
            }
            if ab % a != 0 {
                continue;
            }
            let b = ab / a;
            if coprime_only && a.gcd(&b) != 1 {
                continue;
            }
            if terms[ab - 1] != &terms[a - 1] * &terms[b - 1] {
                return Some((a, b));
            }
        }
    }
    None
}

/// `f(ab) = f(a) f(b)` for coprime `a, b` with `ab <= bound`.
pub fn is_multiplicative(f: &Sequence, bound: usize) -> Result<ClassificationReport> {
    let eff = f.available(bound);
    let terms = f.prefix(eff)?;
    let witness =
        first_product_failure(&terms, true).map(|(a, b)| Witness::Multiplicative { a, b });
    Ok(ClassificationReport::new(
        Property::Multiplicative,
        bound,
        eff,
        witness,
    ))
}

/// `f(ab) = f(a) f(b)` for all `a, b` with `ab <= bound`.
pub fn is_homomorphic(f: &Sequence, bound: usize) -> Result<ClassificationReport> {
    let eff = f.available(bound);
    let terms = f.prefix(eff)?;
    let witness = first_product_failure(&terms, false).map(|(a, b)| Witness::Homomorphic { a, b });
    Ok(ClassificationReport::new(
        Property::Homomorphic,
        bound,
        eff,
        witness,
    ))
}

/// Binomid test for `(c^{b_n})` in additive form: the partial sums of `b`
/// must be superadditive, `s(m) + s(n) <= s(m+n)` for `m + n <= bound`.
/// Entries of `b` may be zero or negative.
pub fn additive_binomid_check(c: u64, b: &[i64], bound: usize) -> Result<ClassificationReport> {
    if c < 2 {
        return Err(Error::InvalidArgument(format!(
            "additive check needs c > 1, got {c}"
        )));
    }
    let eff = bound.min(b.len());
    let mut s = vec![0i64; eff + 1];
    for i in 1..=eff {
        s[i] = s[i - 1]
            .checked_add(b[i - 1])
            .ok_or_else(|| Error::InvalidArgument("exponent sum overflows".into()))?;
    }
    let mut witness = None;
    'outer: for total in 2..=eff {
        for m in 1..total {
            let n = total - m;
            if s[m] + s[n] > s[total] {
                witness = Some(Witness::Superadditive {
                    m,
                    n,
                    lhs: s[m] + s[n],
                    rhs: s[total],
                });
                break 'outer;
            }
        }
    }
    Ok(
        ClassificationReport::new(Property::Binomid, bound, eff, witness)
            .with_note(format!("additive form with base {c}")),
    )
}

/// Per-prime view of the binomid property.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeDecomposition {
    pub bound: usize,
    pub prime_bound: u64,
    /// One report per prime `p <= prime_bound` dividing some term, for the
    /// sequence `(p^{v_p(f_n)})`.
    pub reports: Vec<(u64, ClassificationReport)>,
    /// Terms with a prime factor above `prime_bound`: `(index, cofactor)`.
    pub unfactored: Vec<(usize, String)>,
}

impl PrimeDecomposition {
    /// `None` when some term could not be factored within the prime bound.
    pub fn combined(&self) -> Option<Verdict> {
        if !self.unfactored.is_empty() {
            return None;
        }
        Some(if self.reports.iter().all(|(_, r)| r.holds()) {
            Verdict::HoldsToBound
        } else {
            Verdict::Fails
        })
    }
}

pub fn per_prime_decomposition(
    f: &Sequence,
    bound: usize,
    prime_bound: u64,
) -> Result<PrimeDecomposition> {
    let eff = f.available(bound);
    let terms = f.prefix(eff)?;
    let primes: Vec<u64> = (2..=prime_bound)
        .filter(|&p| numtheory::is_prime(p))
        .collect();
    let mut exponents: Vec<(u64, Vec<u32>)> = Vec::new();
    let mut unfactored = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        let mut rest = t.abs();
        for &p in &primes {
            if rest.is_one() {
                break;
            }
            let pb = BigInt::from(p);
            let mut e = 0;
            while (&rest % &pb).is_zero() {
                rest /= &pb;
                e += 1;
            }
            if e > 0 {
                let slot = match exponents.iter().position(|(q, _)| *q == p) {
                    Some(pos) => pos,
                    None => {
                        exponents.push((p, vec![0; eff]));
                        exponents.len() - 1
                    }
                };
                exponents[slot].1[i] = e;
            }
        }
        if !rest.is_one() {
            unfactored.push((i + 1, rest.to_string()));
        }
    }
    exponents.sort_by_key(|(p, _)| *p);
    let mut reports = Vec::with_capacity(exponents.len());
    for (p, exps) in exponents {
        let pb = BigInt::from(p);
        let seq = Sequence::from_list_named(
            format!("{p}^v{p}({f})"),
            exps.iter().map(|&e| pb.pow(e)).collect(),
        )?;
        reports.push((p, is_binomid(&seq, eff)?));
    }
    let decomposition = PrimeDecomposition {
        bound,
        prime_bound,
        reports,
        unfactored,
    };
    if let Some(combined) = decomposition.combined() {
        let direct = is_binomid(f, eff)?.verdict;
        if combined != direct {
            return Err(Error::Internal(format!(
                "per-prime verdict {combined} disagrees with direct verdict {direct} for {f}"
            )));
        }
    }
    Ok(decomposition)
}

/// One characterization of a property of `f = P(g)` read off from `g`,
/// alongside the direct classifier for the same property.
#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub holds: bool,
    /// Where the criterion on `g` breaks, as a list of indices.
    pub counterexample: Option<Vec<usize>>,
    pub direct: ClassificationReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisorProductProfile {
    pub bound: usize,
    /// Set when `f(1) != 1` or `f` is not a divisor-product to the bound;
    /// the criteria are then absent.
    pub precondition_failure: Option<String>,
    #[serde(serialize_with = "ser_big_vec")]
    pub inverse: Vec<BigInt>,
    /// `f` multiplicative iff `g(n) = 1` off prime powers.
    pub multiplicative: Option<Criterion>,
    /// `f` homomorphic iff additionally `g(p^m) = g(p)`.
    pub homomorphic: Option<Criterion>,
    /// `f` GCD iff `g(m), g(n)` coprime whenever neither divides the other.
    pub gcd: Option<Criterion>,
}

fn ser_big_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn off_prime_power_failure(g: &[BigInt]) -> Option<usize> {
    (2..=g.len()).find(|&n| prime_power(n as u64).is_none() && !g[n - 1].is_one())
}

fn criterion(
    holds_at: Option<Vec<usize>>,
    direct: ClassificationReport,
    name: &str,
) -> Result<Criterion> {
    let holds = holds_at.is_none();
    if holds != direct.holds() {
        return Err(Error::Internal(format!(
            "{name} criterion on g ({holds}) disagrees with direct classifier ({})",
            direct.verdict
        )));
    }
    Ok(Criterion {
        holds,
        counterexample: holds_at,
        direct,
    })
}

/// Evaluates the three characterizations of multiplicative, homomorphic and
/// GCD divisor-products on `g = P^{-1}(f)` and checks each against the
/// direct classifier on `f`.
pub fn divisor_product_profile(f: &Sequence, bound: usize) -> Result<DivisorProductProfile> {
    let eff = f.available(bound);
    let mut profile = DivisorProductProfile {
        bound: eff,
        precondition_failure: None,
        inverse: Vec::new(),
        multiplicative: None,
        homomorphic: None,
        gcd: None,
    };
    let first = f.term(1)?;
    if !first.is_one() {
        profile.precondition_failure = Some(format!("f(1) = {first}, expected 1"));
        return Ok(profile);
    }
    let dp = is_divisor_product(f, eff)?;
    if let Some(w) = dp.witness {
        profile.precondition_failure = Some(format!("not a divisor-product: {w}"));
        return Ok(profile);
    }
    let g: Vec<BigInt> = mobius_invert(f, eff)?
        .into_iter()
        .map(|v| v.to_integer().expect("checked integral"))
        .collect();

    let mult_fail = off_prime_power_failure(&g).map(|n| vec![n]);
    let homo_fail = mult_fail.clone().or_else(|| {
        (2..=eff).find_map(|n| {
            let (p, e) = prime_power(n as u64)?;
            (e > 1 && g[n - 1] != g[p as usize - 1]).then(|| vec![p as usize, n])
        })
    });
    let gcd_fail = (1..=eff).find_map(|n| {
        (1..n).find_map(|m| (n % m != 0 && !g[m - 1].gcd(&g[n - 1]).is_one()).then(|| vec![m, n]))
    });

    profile.multiplicative = Some(criterion(
        mult_fail,
        is_multiplicative(f, eff)?,
        "multiplicative",
    )?);
    profile.homomorphic = Some(criterion(
        homo_fail,
        is_homomorphic(f, eff)?,
        "homomorphic",
    )?);
    profile.gcd = Some(criterion(gcd_fail, is_gcd_sequence(f, eff)?, "gcd")?);
    profile.inverse = g;
    Ok(profile)
}

/// Re-evaluates the defining condition of a failing report's witness
/// directly on the terms of `f`. Returns `true` when the witness really is a
/// violation.
pub fn confirm_witness(f: &Sequence, witness: &Witness) -> Result<bool> {
    let t = |i: usize| f.term(i);
    Ok(match witness {
        Witness::Coefficient { n, k, .. } => {
            let num: BigInt = (n - k + 1..=*n).map(t).product::<Result<BigInt>>()?;
            let den: BigInt = (1..=*k).map(t).product::<Result<BigInt>>()?;
            !divides(&den, &num)
        }
        Witness::SourceEntry { n, k, .. } => !crate::triangle::fbinom(f, *n, *k)?.is_integer(),
        Witness::Level { level, inner } => {
            confirm_witness(&col_seq(f, *level)?, inner).or_else(|e| match (e, inner.as_ref()) {
                (Error::NonIntegral { .. }, Witness::SourceEntry { .. }) => Ok(true),
                (e, _) => Err(e),
            })?
        }
        Witness::Slice { slice, inner } => match row_seq(f, *slice) {
            Ok(row) => confirm_witness(&row, inner)?,
            Err(Error::NonIntegral { .. }) => true,
            Err(e) => return Err(e),
        },
        Witness::Chain { n, .. } => !divides(&t(*n)?, &t(n + 1)?),
        Witness::Divisibility { k, n } => n % k == 0 && !divides(&t(*k)?, &t(*n)?),
        Witness::Gcd { m, n, .. } => t(*m)?.gcd(&t(*n)?) != t(m.gcd(n))?.abs(),
        Witness::DualGcd { m, n, .. } => !divides(&t(*m)?.gcd(&t(*n)?), &t(m + n)?),
        Witness::DivisorProduct { n, .. } => !mobius_invert(f, *n)?[n - 1].is_integer(),
        Witness::Multiplicative { a, b } => a.gcd(b) == 1 && t(a * b)? != t(*a)? * t(*b)?,
        Witness::Homomorphic { a, b } => t(a * b)? != t(*a)? * t(*b)?,
        Witness::Superadditive { lhs, rhs, .. } => lhs > rhs,
    })
}

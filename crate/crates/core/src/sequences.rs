//! The [`Sequence`] type and the constructors and combinators built on it.
//!
//! Sequences are 1-indexed streams of nonzero big integers. A sequence is
//! either finite (a fixed number of terms; later indices are *undefined*) or
//! unbounded and driven by a deterministic term rule. Terms are materialized
//! on demand and memoized in a prefix cache.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{self, binomial};

/// A term rule sees the index being computed and every earlier term.
type Rule = dyn Fn(usize, &[BigInt]) -> Result<BigInt> + Send + Sync;

struct Inner {
    name: String,
    length: Option<usize>,
    rule: Box<Rule>,
    cache: Mutex<Vec<BigInt>>,
}

/// A 1-indexed sequence of nonzero integers. Cloning is cheap and clones
/// share the term cache.
#[derive(Clone)]
pub struct Sequence {
    inner: Arc<Inner>,
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sequence")
            .field("name", &self.inner.name)
            .field("length", &self.inner.length)
            .finish()
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.inner.name)
    }
}

impl Sequence {
    /// A sequence given by a closed-form rule `n -> f_n`.
    pub fn from_fn<F>(name: impl Into<String>, length: Option<usize>, rule: F) -> Self
    where
        F: Fn(usize) -> Result<BigInt> + Send + Sync + 'static,
    {
        Self::from_recurrence(name, length, move |n, _| rule(n))
    }

    /// A sequence whose rule may look back at the terms before `n`
    /// (passed as a slice holding `f_1 ..= f_{n-1}`).
    pub fn from_recurrence<F>(name: impl Into<String>, length: Option<usize>, rule: F) -> Self
    where
        F: Fn(usize, &[BigInt]) -> Result<BigInt> + Send + Sync + 'static,
    {
        Self {
            inner: Arc::new(Inner {
                name: name.into(),
                length,
                rule: Box::new(rule),
                cache: Mutex::new(Vec::new()),
            }),
        }
    }

    /// A finite sequence with the given terms. Zero terms are rejected.
    pub fn from_list(values: Vec<BigInt>) -> Result<Self> {
        let name = format!(
            "list:{}",
            values
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        Self::from_list_named(name, values)
    }

    pub fn from_list_named(name: impl Into<String>, values: Vec<BigInt>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument(
                "a sequence needs at least one term".into(),
            ));
        }
        if let Some(i) = values.iter().position(Zero::is_zero) {
            return Err(Error::ZeroTerm { index: i + 1 });
        }
        let length = values.len();
        let seq = Self::from_fn(name, Some(length), |_| {
            unreachable!("list sequences are pre-filled")
        });
        *seq.inner.cache.lock().unwrap() = values;
        Ok(seq)
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// The same terms under a different display name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let source = self.clone();
        Self::from_fn(name, self.len(), move |n| source.term(n))
    }

    /// `Some(N)` for a finite sequence of `N` terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        self.inner.length
    }

    pub fn is_finite(&self) -> bool {
        self.inner.length.is_some()
    }

    /// How many of the indices `1..=n` are defined.
    pub fn available(&self, n: usize) -> usize {
        self.inner.length.map_or(n, |len| len.min(n))
    }

    /// The term `f_n`, for `n >= 1`.
    pub fn term(&self, n: usize) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "sequences are indexed from 1".into(),
            ));
        }
        self.fill(n)?;
        Ok(self.inner.cache.lock().unwrap()[n - 1].clone())
    }

    /// The terms `f_1 ..= f_n`.
    pub fn prefix(&self, n: usize) -> Result<Vec<BigInt>> {
        self.fill(n)?;
        Ok(self.inner.cache.lock().unwrap()[..n].to_vec())
    }

    fn fill(&self, n: usize) -> Result<()> {
        if let Some(length) = self.inner.length {
            if n > length {
                return Err(Error::Undefined { index: n, length });
            }
        }
        // The lock is held while extending, so each term is computed once.
        let mut cache = self.inner.cache.lock().unwrap();
        while cache.len() < n {
            let index = cache.len() + 1;
            let value = (self.inner.rule)(index, &cache)?;
            if value.is_zero() {
                return Err(Error::ZeroTerm { index });
            }
            cache.push(value);
        }
        Ok(())
    }
}

fn nonzero(c: &BigInt, what: &str) -> Result<()> {
    if c.is_zero() {
        Err(Error::InvalidArgument(format!(
            "{what} requires a nonzero constant"
        )))
    } else {
        Ok(())
    }
}

fn pow(base: &BigInt, exp: usize) -> BigInt {
    Pow::pow(base, exp)
}

/// `I = (1, 2, 3, ...)`.
pub fn identity_seq() -> Sequence {
    Sequence::from_fn("I", None, |n| Ok(BigInt::from(n)))
}

/// `(c, c, c, ...)`.
pub fn const_seq(c: BigInt) -> Result<Sequence> {
    nonzero(&c, "const_seq")?;
    Ok(Sequence::from_fn(format!("const:{c}"), None, move |_| {
        Ok(c.clone())
    }))
}

/// `(c, c^2, c^3, ...)`.
pub fn power_seq(c: BigInt) -> Result<Sequence> {
    nonzero(&c, "power_seq")?;
    Ok(Sequence::from_recurrence(
        format!("cpow:{c}"),
        None,
        move |n, prev| Ok(if n == 1 { c.clone() } else { &prev[n - 2] * &c }),
    ))
}

/// `(1!, 2!, 3!, ...)`.
pub fn factorial_seq() -> Sequence {
    Sequence::from_recurrence("fact", None, |n, prev| {
        Ok(if n == 1 {
            BigInt::one()
        } else {
            &prev[n - 2] * BigInt::from(n)
        })
    })
}

/// Triangular numbers `n(n+1)/2`.
pub fn triangular_seq() -> Sequence {
    Sequence::from_fn("T", None, |n| Ok(BigInt::from(n) * BigInt::from(n + 1) / 2))
}

/// Pascal column `C_m(n) = binom(n+m-1, m)`.
pub fn pascal_column(m: usize) -> Sequence {
    Sequence::from_fn(format!("pcol:{m}"), None, move |n| {
        Ok(binomial((n + m - 1) as u64, m as u64))
    })
}

/// Pascal row `R_m(n) = binom(m, n-1)`, which has `m + 1` terms.
pub fn pascal_row(m: usize) -> Sequence {
    Sequence::from_fn(format!("prow:{m}"), Some(m + 1), move |n| {
        Ok(binomial(m as u64, (n - 1) as u64))
    })
}

/// `G_{a,b}(n) = (a^n - b^n)/(a - b)`, or `n a^(n-1)` when `a = b`.
pub fn g_ab(a: BigInt, b: BigInt) -> Result<Sequence> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidArgument(
            "g_ab requires (a, b) != (0, 0)".into(),
        ));
    }
    let name = format!("gab:{a},{b}");
    Ok(Sequence::from_fn(name, None, move |n| {
        Ok(if a == b {
            BigInt::from(n) * pow(&a, n - 1)
        } else {
            (pow(&a, n) - pow(&b, n)) / (&a - &b)
        })
    }))
}

/// `G_q = (1, 1+q, 1+q+q^2, ...)`, whose triangle holds the Gaussian
/// binomial coefficients.
pub fn gq(q: BigInt) -> Result<Sequence> {
    let name = format!("gq:{q}");
    Ok(g_ab(q, BigInt::one())?.renamed(name))
}

/// The Lucas sequence `U_{P,Q}`: `U(0) = 0`, `U(1) = 1`,
/// `U(n+2) = P U(n+1) - Q U(n)`. Only the terms from `U(1)` on are exposed.
pub fn lucas(p: BigInt, q: BigInt) -> Result<Sequence> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::InvalidArgument(
            "lucas requires (P, Q) != (0, 0)".into(),
        ));
    }
    let name = format!("lucas:{p},{q}");
    Ok(Sequence::from_recurrence(name, None, move |n, prev| {
        Ok(match n {
            1 => BigInt::one(),
            2 => p.clone(),
            _ => &p * &prev[n - 2] - &q * &prev[n - 3],
        })
    }))
}

/// Fibonacci numbers, `U_{1,-1}`.
pub fn fibonacci() -> Sequence {
    lucas(BigInt::one(), BigInt::from(-1))
        .expect("(1, -1) is a valid Lucas pair")
        .renamed("fib")
}

/// Euler's totient as a sequence.
pub fn euler_phi_seq() -> Sequence {
    Sequence::from_fn("phi", None, |n| {
        Ok(BigInt::from(numtheory::euler_phi(n as u64)?))
    })
}

/// `H_m(n) = binom(mn, m)`.
pub fn h_m(m: usize) -> Result<Sequence> {
    if m == 0 {
        return Err(Error::InvalidArgument("h_m requires m >= 1".into()));
    }
    Ok(Sequence::from_fn(format!("hm:{m}"), None, move |n| {
        Ok(binomial((m * n) as u64, m as u64))
    }))
}

/// The divisor-product `P(g)(n) = ∏_{d | n} g(d)`.
pub fn divisor_product_of(g: &Sequence) -> Sequence {
    let g = g.clone();
    Sequence::from_fn(format!("P({g})"), g.len(), move |n| {
        numtheory::divisors(n as u64)
            .into_iter()
            .try_fold(BigInt::one(), |acc, d| Ok(acc * g.term(d as usize)?))
    })
}

fn min_len(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

/// Pointwise product `(fg)_n = f_n g_n`.
pub fn product(f: &Sequence, g: &Sequence) -> Sequence {
    let (f, g) = (f.clone(), g.clone());
    Sequence::from_fn(
        format!("product({f},{g})"),
        min_len(f.len(), g.len()),
        move |n| Ok(f.term(n)? * g.term(n)?),
    )
}

/// Pointwise scalar multiple `c f`.
pub fn scalar(c: BigInt, f: &Sequence) -> Result<Sequence> {
    nonzero(&c, "scalar")?;
    let f = f.clone();
    Ok(Sequence::from_fn(
        format!("scalar({c},{f})"),
        f.len(),
        move |n| Ok(&c * f.term(n)?),
    ))
}

/// `(1, f_1, f_2, ...)`.
pub fn prepend_one(f: &Sequence) -> Sequence {
    let f = f.clone();
    Sequence::from_fn(format!("prepend1({f})"), f.len().map(|l| l + 1), move |n| {
        if n == 1 {
            Ok(BigInt::one())
        } else {
            f.term(n - 1)
        }
    })
}

/// `(1, f_1, 1, f_2, 1, f_3, ...)`.
pub fn interleave_ones(f: &Sequence) -> Sequence {
    let f = f.clone();
    Sequence::from_fn(
        format!("interleave1({f})"),
        f.len().map(|l| 2 * l),
        move |n| {
            if n % 2 == 1 {
                Ok(BigInt::one())
            } else {
                f.term(n / 2)
            }
        },
    )
}

/// `(f_1, f_1, f_2, f_2, ...)`.
pub fn double_terms(f: &Sequence) -> Sequence {
    let f = f.clone();
    Sequence::from_fn(format!("double({f})"), f.len().map(|l| 2 * l), move |n| {
        f.term(n.div_ceil(2))
    })
}

/// `ψ ∘ f` for the homomorphic map `ψ(x) = x^e`.
pub fn compose_power(e: u32, f: &Sequence) -> Sequence {
    let f = f.clone();
    Sequence::from_fn(format!("pow({e},{f})"), f.len(), move |n| {
        Ok(pow(&f.term(n)?, e as usize))
    })
}

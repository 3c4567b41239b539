//! Arithmetic utilities: Möbius and Euler functions, prime valuations,
//! divisors, binomials, and cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(format!("{what} requires n >= 1")))
    } else {
        Ok(())
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// `Some((p, e))` when `n = p^e` with `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [single] => Some(*single),
        _ => None,
    }
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The Möbius function μ(n).
pub fn mobius(n: u64) -> Result<i8> {
    require_positive(n, "mobius")?;
    let factors = factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    })
}

/// Euler's totient φ(n).
pub fn euler_phi(n: u64) -> Result<u64> {
    require_positive(n, "euler_phi")?;
    Ok(factorize(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

/// The exponent of the prime `p` in `n`, ignoring the sign of `n`.
pub fn valuation(p: u64, n: &BigInt) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if n.is_zero() {
        return Err(Error::InvalidArgument("valuation of zero".into()));
    }
    let p = BigInt::from(p);
    let mut rest = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// The ordinary binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 at every step.
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Nonnegative gcd of two big integers.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// The cyclotomic polynomial `Φ_n(x)` in inhomogeneous form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicPoly {
    index: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicPoly {
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// The homogeneous form `Φ_n(a, b) = Σ c_i a^i b^(deg - i)`.
    pub fn eval_homogeneous(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let deg = self.degree();
        let mut a_pow = BigInt::one();
        let mut b_pows = Vec::with_capacity(deg + 1);
        let mut acc = BigInt::one();
        for _ in 0..=deg {
            b_pows.push(acc.clone());
            acc *= b;
        }
        let mut sum = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            sum += c * &a_pow * &b_pows[deg - i];
            a_pow *= a;
        }
        sum
    }
}

/// Divides `num` by the monic `den` in place, returning the quotient.
/// Panics if the remainder is nonzero; callers only divide by known factors.
fn exact_div_monic(mut num: Vec<BigInt>, den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let nd = num.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = num[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            num[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    assert!(
        num.iter().all(Zero::is_zero),
        "cyclotomic division left a nonzero remainder"
    );
    quot
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u64, Arc<CyclotomicPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<CyclotomicPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Φ_n(x)`, computed by dividing `x^n - 1` by `Φ_d` for every proper
/// divisor `d` of `n`. Results are memoized for the life of the process.
pub fn cyclotomic(n: u64) -> Result<Arc<CyclotomicPoly>> {
    require_positive(n, "cyclotomic")?;
    if let Some(hit) = cyclotomic_cache().read().unwrap().get(&n) {
        return Ok(Arc::clone(hit));
    }
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            poly = exact_div_monic(poly, cyclotomic(d)?.coeffs());
        }
    }
    let computed = Arc::new(CyclotomicPoly {
        index: n,
        coeffs: poly,
    });
    // Another thread may have won the race; everyone returns the stored copy.
    let mut cache = cyclotomic_cache().write().unwrap();
    Ok(Arc::clone(cache.entry(n).or_insert(computed)))
}

/// `Φ_n(a, b)`, exactly.
pub fn cyclotomic_eval(n: u64, a: &BigInt, b: &BigInt) -> Result<BigInt> {
    Ok(cyclotomic(n)?.eval_homogeneous(a, b))
}

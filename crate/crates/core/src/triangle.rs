//! f-factorials, f-binomial coefficients, the triangle `Δ(f)`, its row and
//! column sequences, and the pyramid `BP(f)`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::sequences::Sequence;

/// `⟨n⟩_f = f_n f_{n-1} ... f_1`, with `⟨0⟩_f = 1`.
pub fn ffactorial(f: &Sequence, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    Ok(f.prefix(n)?.iter().product())
}

/// `[n k]_f` as a reduced fraction. `k > n` is undefined, as is any `n`
/// past the end of a finite `f`.
pub fn fbinom(f: &Sequence, n: usize, k: usize) -> Result<ExactRational> {
    if k > n {
        return Err(Error::KExceedsN { n, k });
    }
    if n == 0 {
        return Ok(ExactRational::one());
    }
    let terms = f.prefix(n)?;
    let k = k.min(n - k);
    let numer: BigInt = terms[n - k..n].iter().product();
    let denom: BigInt = terms[..k].iter().product();
    ExactRational::new(numer, denom)
}

/// `[n k]` over an arbitrary list of nonzero rationals (`terms[i]` is the
/// term with index `i + 1`).
pub fn fbinom_of_terms(terms: &[ExactRational], n: usize, k: usize) -> Result<ExactRational> {
    if k > n {
        return Err(Error::KExceedsN { n, k });
    }
    if n > terms.len() {
        return Err(Error::Undefined {
            index: n,
            length: terms.len(),
        });
    }
    let mut acc = ExactRational::one();
    for i in 0..k {
        if terms[i].is_zero() {
            return Err(Error::ZeroTerm { index: i + 1 });
        }
        acc = &(&acc * &terms[n - k + i]) / &terms[i];
    }
    Ok(acc)
}

/// The triangle `Δ(f)` for `0 <= k <= n <= depth`.
#[derive(Clone, Debug)]
pub struct Triangle {
    source: Sequence,
    rows: Vec<Vec<ExactRational>>,
}

/// Builds `Δ(f)` down to row `depth`. For a finite `f` the depth is capped at
/// its length. Each `⟨n⟩_f` is computed once and every entry is a single
/// exact division.
pub fn triangle(f: &Sequence, depth: usize) -> Result<Triangle> {
    let depth = f.available(depth);
    let terms = f.prefix(depth)?;
    let mut factorials = Vec::with_capacity(depth + 1);
    factorials.push(BigInt::one());
    for t in &terms {
        let next = factorials.last().unwrap() * t;
        factorials.push(next);
    }
    let rows = (0..=depth)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    ExactRational::new(factorials[n].clone(), &factorials[k] * &factorials[n - k])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Triangle {
        source: f.clone(),
        rows,
    })
}

impl Triangle {
    pub fn source(&self) -> &Sequence {
        &self.source
    }

    /// Index of the last row.
    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn entry(&self, n: usize, k: usize) -> Option<&ExactRational> {
        self.rows.get(n)?.get(k)
    }

    pub fn row(&self, n: usize) -> Option<&[ExactRational]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn rows(&self) -> &[Vec<ExactRational>] {
        &self.rows
    }

    /// Column `k` from row `k` down.
    pub fn column(&self, k: usize) -> Vec<&ExactRational> {
        self.rows.iter().skip(k).map(|row| &row[k]).collect()
    }

    /// The first non-integral entry in row-major order.
    pub fn first_non_integral(&self) -> Option<(usize, usize, &ExactRational)> {
        self.rows.iter().enumerate().find_map(|(n, row)| {
            row.iter()
                .enumerate()
                .find(|(_, v)| !v.is_integer())
                .map(|(k, v)| (n, k, v))
        })
    }

    pub fn is_integral(&self) -> bool {
        self.first_non_integral().is_none()
    }
}

fn require_leading_one(f: &Sequence) -> Result<()> {
    let first = f.term(1)?;
    if first.is_one() {
        Ok(())
    } else {
        Err(Error::LeadingTermNotOne(first))
    }
}

fn integral_entry(f: &Sequence, n: usize, k: usize) -> Result<BigInt> {
    let value = fbinom(f, n, k)?;
    value.to_integer().ok_or(Error::NonIntegral { n, k, value })
}

/// Row `m` of `Δ(f)` as a finite sequence: `R_m(N) = [m, N-1]_f`, `m + 1`
/// terms. Requires `f_1 = 1` and an integral row.
pub fn row_seq(f: &Sequence, m: usize) -> Result<Sequence> {
    require_leading_one(f)?;
    let terms = (0..=m)
        .map(|k| integral_entry(f, m, k))
        .collect::<Result<Vec<_>>>()?;
    Sequence::from_list_named(format!("row({m},{f})"), terms)
}

/// Column `j` of `Δ(f)`: `C_j(N) = [N+j-1, j]_f`. Requires `f_1 = 1`.
/// A non-integral entry surfaces as [`Error::NonIntegral`] when that term is
/// materialized.
pub fn col_seq(f: &Sequence, j: usize) -> Result<Sequence> {
    require_leading_one(f)?;
    let length = match f.len() {
        Some(len) if j > len => {
            return Err(Error::Undefined {
                index: j,
                length: len,
            })
        }
        Some(len) => Some(len + 1 - j),
        None => None,
    };
    let f = f.clone();
    Ok(Sequence::from_fn(
        format!("col({j},{f})"),
        length,
        move |n| integral_entry(&f, n + j - 1, j),
    ))
}

/// `BP(f)` to depth `D`: slice `m` is `Δ(R_m)` with rows `0..=m`.
#[derive(Clone, Debug)]
pub struct Pyramid {
    source: Sequence,
    slices: Vec<Triangle>,
}

pub fn pyramid(f: &Sequence, depth: usize) -> Result<Pyramid> {
    require_leading_one(f)?;
    let slices = (0..=depth)
        .map(|m| triangle(&row_seq(f, m)?, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(Pyramid {
        source: f.clone(),
        slices,
    })
}

impl Pyramid {
    pub fn source(&self) -> &Sequence {
        &self.source
    }

    pub fn depth(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slice(&self, m: usize) -> Option<&Triangle> {
        self.slices.get(m)
    }

    pub fn slices(&self) -> &[Triangle] {
        &self.slices
    }

    /// First non-integral entry as `(slice, n, k, value)`.
    pub fn first_non_integral(&self) -> Option<(usize, usize, usize, &ExactRational)> {
        self.slices
            .iter()
            .enumerate()
            .find_map(|(m, t)| t.first_non_integral().map(|(n, k, v)| (m, n, k, v)))
    }

    pub fn is_integral(&self) -> bool {
        self.first_non_integral().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| big(x)).collect()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(big(n), big(d)).unwrap()
    }

    fn row_ints(t: &Triangle, n: usize) -> Vec<BigInt> {
        t.row(n)
            .unwrap()
            .iter()
            .map(|v| v.to_integer().unwrap())
            .collect()
    }

    fn two_to_the(a: &[u32]) -> Sequence {
        Sequence::from_list(a.iter().map(|&e| BigInt::from(2).pow(e)).collect()).unwrap()
    }

    #[test]
    fn ffactorial_examples() {
        assert_eq!(ffactorial(&identity_seq(), 5).unwrap(), big(120));
        assert_eq!(ffactorial(&gq(big(2)).unwrap(), 4).unwrap(), big(315));
        assert_eq!(ffactorial(&fibonacci(), 0).unwrap(), big(1));
        let short = Sequence::from_list(ints(&[1, 2])).unwrap();
        assert!(ffactorial(&short, 3).unwrap_err().is_undefined());
    }

    #[test]
    fn fbinom_examples() {
        assert_eq!(fbinom(&gq(big(2)).unwrap(), 6, 3).unwrap(), q(1395, 1));
        let f = two_to_the(&[0, 2, 4, 1, 3, 1, 4, 4, 4]);
        assert_eq!(fbinom(&f, 6, 3).unwrap(), q(1, 2));
        assert_eq!(fbinom(&fibonacci(), 5, 2).unwrap(), q(15, 1));
        assert_eq!(
            fbinom(&identity_seq(), 3, 4),
            Err(Error::KExceedsN { n: 3, k: 4 })
        );
        assert_eq!(fbinom(&identity_seq(), 0, 0).unwrap(), q(1, 1));
        assert!(fbinom(&f, 10, 2).unwrap_err().is_undefined());
    }

    #[test]
    fn triangle_rows_from_displays() {
        assert_eq!(
            row_ints(&triangle(&triangular_seq(), 5).unwrap(), 5),
            ints(&[1, 15, 50, 50, 15, 1])
        );
        assert_eq!(
            row_ints(&triangle(&pascal_column(3), 7).unwrap(), 7),
            ints(&[1, 84, 1176, 4116, 4116, 1176, 84, 1])
        );
        assert_eq!(
            row_ints(&triangle(&identity_seq(), 8).unwrap(), 8),
            ints(&[1, 8, 28, 56, 70, 56, 28, 8, 1])
        );
    }

    #[test]
    fn finite_source_caps_depth() {
        let t = triangle(&pascal_row(3), 10).unwrap();
        assert_eq!(t.depth(), 4);
        assert_eq!(row_ints(&t, 4), ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn triangle_reports_first_non_integral() {
        let f = two_to_the(&[0, 2, 4, 1, 3, 1, 4, 4, 4]);
        let t = triangle(&f, 9).unwrap();
        let (n, k, v) = t.first_non_integral().unwrap();
        assert_eq!((n, k, v.clone()), (6, 3, q(1, 2)));
    }

    #[test]
    fn pascal_triangle_matches_additive_recurrence() {
        let depth = 20;
        let mut table = vec![vec![big(1)]];
        for n in 0..depth {
            let prev = &table[n];
            let mut next = vec![big(1)];
            for k in 0..n {
                next.push(&prev[k] + &prev[k + 1]);
            }
            next.push(big(1));
            table.push(next);
        }
        let t = triangle(&identity_seq(), depth).unwrap();
        for (n, row) in table.iter().enumerate() {
            assert_eq!(&row_ints(&t, n), row);
        }
    }

    #[test]
    fn row_and_column_sequences() {
        let c2 = col_seq(&triangular_seq(), 2).unwrap();
        assert_eq!(c2.prefix(5).unwrap(), ints(&[1, 6, 20, 50, 105]));
        assert_eq!(
            row_seq(&identity_seq(), 4).unwrap().prefix(5).unwrap(),
            ints(&[1, 4, 6, 4, 1])
        );
        assert_eq!(
            col_seq(&fibonacci(), 0).unwrap().prefix(3).unwrap(),
            ints(&[1, 1, 1])
        );
        let f = fibonacci();
        assert_eq!(
            col_seq(&f, 1).unwrap().prefix(20).unwrap(),
            f.prefix(20).unwrap()
        );
        assert!(matches!(
            row_seq(&const_seq(big(2)).unwrap(), 2),
            Err(Error::LeadingTermNotOne(_))
        ));
    }

    #[test]
    fn column_of_non_binomid_reports_witness() {
        let f = two_to_the(&[0, 2, 4, 1, 3, 1, 4, 4, 4]);
        let c3 = col_seq(&f, 3).unwrap();
        assert_eq!(c3.len(), Some(7));
        // C_3(4) = [6 3]_f = 1/2.
        assert_eq!(
            c3.term(4),
            Err(Error::NonIntegral {
                n: 6,
                k: 3,
                value: q(1, 2)
            })
        );
        assert!(matches!(
            row_seq(&f, 6),
            Err(Error::NonIntegral { n: 6, k: 3, .. })
        ));
    }

    #[test]
    fn pyramid_slices() {
        let p = pyramid(&identity_seq(), 7).unwrap();
        assert_eq!(row_ints(p.slice(6).unwrap(), 4), ints(&[1, 20, 50, 20, 1]));
        assert_eq!(row_ints(p.slice(7).unwrap(), 3), ints(&[1, 21, 21, 1]));
        let p1 = pyramid(&fibonacci(), 1).unwrap();
        let s1 = p1.slice(1).unwrap();
        assert_eq!(s1.depth(), 1);
        assert_eq!(row_ints(s1, 0), ints(&[1]));
        assert_eq!(row_ints(s1, 1), ints(&[1, 1]));
        for (m, slice) in p.slices().iter().enumerate() {
            assert_eq!(slice.depth(), m);
            for n in 0..=m {
                assert!(slice.entry(n, 0).unwrap().is_one());
                assert!(slice.entry(n, n).unwrap().is_one());
            }
        }
        assert!(p.is_integral());
        assert!(pyramid(&const_seq(big(3)).unwrap(), 2).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn terms() -> impl Strategy<Value = Vec<i64>> {
            prop::collection::vec(prop_oneof![-9i64..=-1, 1i64..=9], 12)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn symmetry_and_factorial_identity(v in terms()) {
                let f = Sequence::from_list(ints(&v)).unwrap();
                let t = triangle(&f, 12).unwrap();
                for n in 0..=12 {
                    let fact_n = ExactRational::from(ffactorial(&f, n).unwrap());
                    for k in 0..=n {
                        prop_assert_eq!(t.entry(n, k), t.entry(n, n - k));
                        let lhs = t.entry(n, k).unwrap()
                            * &ExactRational::from(ffactorial(&f, k).unwrap())
                            * ExactRational::from(ffactorial(&f, n - k).unwrap());
                        prop_assert_eq!(&lhs, &fact_n);
                        prop_assert_eq!(t.entry(n, k).unwrap(), &fbinom(&f, n, k).unwrap());
                    }
                }
            }

            #[test]
            fn product_rule(a in terms(), b in terms()) {
                let f = Sequence::from_list(ints(&a)).unwrap();
                let g = Sequence::from_list(ints(&b)).unwrap();
                let fg = product(&f, &g);
                for n in 0..=12 {
                    for k in 0..=n {
                        prop_assert_eq!(
                            fbinom(&fg, n, k).unwrap(),
                            fbinom(&f, n, k).unwrap() * fbinom(&g, n, k).unwrap()
                        );
                    }
                }
            }

            #[test]
            fn rational_terms_agree(v in terms()) {
                let f = Sequence::from_list(ints(&v)).unwrap();
                let r: Vec<ExactRational> = ints(&v).into_iter().map(ExactRational::from).collect();
                for n in 0..=12 {
                    for k in 0..=n {
                        prop_assert_eq!(fbinom_of_terms(&r, n, k).unwrap(), fbinom(&f, n, k).unwrap());
                    }
                }
            }
        }
    }
}

//! `d^inf(I, n)` in the shifted binomial bases `(C(n+k, i))_i`.
//!
//! With `g(j) = p(j - k)`, the coefficient of `C(n+k, i)` is the `i`-th
//! forward difference of `g` at 0, so coefficients come straight from
//! consecutive evaluations of the closed form.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::descent::DescentSet;
use crate::error::{Error, Result};
use crate::formulas::{binom_poly, d_infinity, forward_differences};
use crate::oracle::count_b_sequences;
use crate::report::Report;
use crate::scalar::{sign_pow, Scalar};

/// `sum_i coeffs[i] * C(n + offset, i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialBasisPoly<T> {
    offset: i64,
    coeffs: Vec<T>,
}

impl<T: Scalar> BinomialBasisPoly<T> {
    pub fn new(offset: i64, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { offset, coeffs }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `C(n + offset, i)`, zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Index of the last nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, n: &T) -> T {
        let x = n.clone() + T::from_i64_exact(self.offset);
        self.coeffs
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, c)| acc + c.clone() * binom_poly(&x, i))
    }

    /// The same polynomial written over `C(n + new_offset, i)`.
    pub fn shifted(&self, new_offset: i64) -> Self {
        let mut coeffs = self.coeffs.clone();
        let mut k = self.offset;
        while k > new_offset {
            // C(x, i) = C(x-1, i) + C(x-1, i-1)
            coeffs = (0..coeffs.len())
                .map(|i| {
                    coeffs[i].clone() + coeffs.get(i + 1).cloned().unwrap_or_else(T::zero)
                })
                .collect();
            k -= 1;
        }
        while k < new_offset {
            // C(x, i) = sum_{j <= i} (-1)^(i-j) C(x+1, j)
            coeffs = (0..coeffs.len())
                .map(|j| {
                    coeffs[j..]
                        .iter()
                        .enumerate()
                        .fold(T::zero(), |acc, (d, c)| acc + sign_pow::<T>(d) * c.clone())
                })
                .collect();
            k += 1;
        }
        Self::new(new_offset, coeffs)
    }

    pub fn has_negative(&self) -> bool {
        self.coeffs.iter().any(|c| c.is_negative())
    }
}

/// Coefficients of `d^inf(I, n)` over `C(n + k, i)`, with a built-in
/// consistency check: the difference of order `a_t + 1` must vanish and
/// the expansion must reproduce `d^inf` at `a_t + 2` further points.
pub fn extract_coeffs<T: Scalar>(set: &DescentSet, k: i64) -> Result<BinomialBasisPoly<T>> {
    let top = set.require_max()?;
    let start = -k;
    let values = (0..=top as i64 + 1)
        .map(|j| d_infinity(set, &T::from_i64_exact(start + j)))
        .collect::<Result<Vec<T>>>()?;
    let coeffs: Vec<T> = (0..=top)
        .map(|i| forward_differences(&values, i)[0].clone())
        .collect();
    let top_diff = forward_differences(&values, top + 1)[0].clone();
    if !top_diff.is_zero() {
        return Err(Error::Internal(format!(
            "difference of order {} of d^inf({set}) is {top_diff}, expected 0",
            top + 1
        )));
    }
    let poly = BinomialBasisPoly::new(k, coeffs);
    for j in top as i64 + 2..=2 * top as i64 + 3 {
        let n = T::from_i64_exact(start + j);
        let direct = d_infinity(set, &n)?;
        if poly.eval(&n) != direct {
            return Err(Error::Internal(format!(
                "basis expansion of d^inf({set}) at n={n} gives {}, closed form gives {direct}",
                poly.eval(&n)
            )));
        }
    }
    Ok(poly)
}

/// Support and positivity of the `C(n-1, i)` coefficients, and their match
/// with the surjective-word counts.
pub fn verify_b_window(set: &DescentSet) -> Result<Report> {
    let mut report = Report::new(format!("b-coefficient window for {set}"));
    let top = set.require_max()?;
    let run = set.longest_run()?;
    let b = extract_coeffs::<BigInt>(set, -1)?;
    for i in 0..=top + 1 {
        let bi = b.coeff(i);
        let case = format!("I={set} i={i}");
        if (run..=top).contains(&i) {
            let pass = bi.is_positive();
            report.check("b-positive-inside-window", case.clone(), "> 0", &bi, pass);
        } else {
            report.check_eq("b-zero-outside-window", case.clone(), BigInt::zero(), bi.clone());
        }
        if i <= top {
            let oracle = BigInt::from(count_b_sequences(set, i)?);
            report.check_eq("b-counts-surjective-words", case, oracle, bi);
        }
    }
    report.check_eq(
        "b-degree-is-max",
        format!("I={set}"),
        top.to_string(),
        b.degree().map_or("none".into(), |d| d.to_string()),
    );
    Ok(report)
}

/// Alternating signs of the leading `C(n, i)` coefficients, and their
/// relation to the `C(n-1, i)` coefficients.
pub fn verify_c_prefix(set: &DescentSet) -> Result<Report> {
    let mut report = Report::new(format!("c-coefficient signs for {set}"));
    let top = set.require_max()?;
    let run = set.longest_run()?;
    let t = set.len();
    let b = extract_coeffs::<BigInt>(set, -1)?;
    let c = extract_coeffs::<BigInt>(set, 0)?;
    for i in 0..=run {
        report.check_eq(
            "c-alternates-up-to-run",
            format!("I={set} i={i}"),
            sign_pow::<BigInt>(i + t),
            c.coeff(i),
        );
    }
    for k in 0..=top {
        let via_b = (k..=top).fold(BigInt::zero(), |acc, i| {
            acc + sign_pow::<BigInt>(i + k) * b.coeff(i)
        });
        report.check_eq("c-from-b", format!("I={set} k={k}"), via_b, c.coeff(k));
    }
    Ok(report)
}

/// Sign pattern of the coefficients over `C(n+k, i)` for `k` in the range:
/// all nonnegative for `k <= -1`, at least one negative for `k >= 0`.
pub fn sign_survey(set: &DescentSet, k_min: i64, k_max: i64) -> Result<Report> {
    let mut report = Report::new(format!("coefficient signs for {set}, k in {k_min}..={k_max}"));
    if k_min > k_max {
        return Err(Error::Domain(format!("empty k range {k_min}..={k_max}")));
    }
    let base = extract_coeffs::<BigInt>(set, -1)?;
    for k in k_min..=k_max {
        let p = extract_coeffs::<BigInt>(set, k)?;
        let case = format!("I={set} k={k}");
        report.check_eq(
            "shift-agrees-with-extraction",
            case.clone(),
            render(&p),
            render(&base.shifted(k)),
        );
        if k <= -1 {
            report.check("nonnegative-for-k-below-0", case, "all >= 0", render(&p), !p.has_negative());
        } else {
            report.check("negative-for-k-from-0", case, "some < 0", render(&p), p.has_negative());
        }
    }
    Ok(report)
}

fn render<T: Scalar>(p: &BinomialBasisPoly<T>) -> String {
    let parts: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> DescentSet {
        DescentSet::new(v.to_vec()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn extract_examples() {
        let b = extract_coeffs::<BigInt>(&set(&[2]), -1).unwrap();
        assert_eq!(b.coeffs(), big(&[0, 2, 1]).as_slice());
        let c = extract_coeffs::<BigInt>(&set(&[2]), 0).unwrap();
        assert_eq!(c.coeffs(), big(&[-1, 1, 1]).as_slice());
        let c = extract_coeffs::<i64>(&set(&[1]), 0).unwrap();
        assert_eq!(c.coeffs(), &[-1, 1]);
    }

    #[test]
    fn single_descent_k0_expansion() {
        // -1 + C(n+a-1, a) = -C(n,0) + sum_{i=1}^{a} C(a-1, a-i) C(n, i)
        for a in 1..=7usize {
            let c = extract_coeffs::<i64>(&set(&[a]), 0).unwrap();
            let mut expect = vec![-1i64];
            expect.extend((1..=a).map(|i| binom_poly(&(a as i64 - 1), a - i)));
            assert_eq!(c.coeffs(), expect.as_slice(), "a={a}");
        }
    }

    #[test]
    fn shift_examples() {
        let p = BinomialBasisPoly::new(-1, big(&[0, 2, 1]));
        assert_eq!(p.shifted(0).coeffs(), big(&[-1, 1, 1]).as_slice());
        assert_eq!(p.shifted(-1), p);
        assert_eq!(p.shifted(-2).coeffs(), big(&[2, 3, 1]).as_slice());
        let one = BinomialBasisPoly::new(0, big(&[1]));
        assert_eq!(one.shifted(5).coeffs(), big(&[1]).as_slice());
        assert_eq!(one.shifted(5).offset(), 5);
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = BinomialBasisPoly::new(0, vec![1i64, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(BinomialBasisPoly::<i64>::new(0, vec![0]).degree(), None);
    }

    #[test]
    fn b_window_examples() {
        let r = verify_b_window(&set(&[2])).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_b_window(&set(&[1, 2, 3])).unwrap();
        assert!(r.passed(), "{r}");
        let b = extract_coeffs::<BigInt>(&set(&[1, 2, 3]), -1).unwrap();
        assert_eq!(b.coeffs(), big(&[0, 0, 0, 1]).as_slice());
        let b = extract_coeffs::<BigInt>(&set(&[1]), -1).unwrap();
        assert_eq!(b.coeffs(), big(&[0, 1]).as_slice());
    }

    #[test]
    fn c_prefix_examples() {
        let c = extract_coeffs::<BigInt>(&set(&[1, 2]), 0).unwrap();
        assert_eq!(c.coeffs(), big(&[1, -1, 1]).as_slice());
        for s in [set(&[2]), set(&[1, 2]), set(&[1])] {
            let r = verify_c_prefix(&s).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn sign_survey_examples() {
        let r = sign_survey(&set(&[2]), -2, 0).unwrap();
        assert!(r.passed(), "{r}");
        assert!(sign_survey(&set(&[2]), 1, 0).is_err());
    }

    #[test]
    fn expansion_reproduces_closed_form() {
        for s in DescentSet::all_nonempty_within(6) {
            let top = s.max_element().unwrap() as i64;
            for k in -3..=3 {
                let p = extract_coeffs::<BigInt>(&s, k).unwrap();
                assert_eq!(p.degree(), Some(top as usize));
                for n in -2..=top + 4 {
                    let n = BigInt::from(n);
                    assert_eq!(p.eval(&n), d_infinity(&s, &n).unwrap(), "{s} k={k} n={n}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn shifting_round_trips(coeffs in proptest::collection::vec(-50i64..50, 0..8), k in -3i64..=3) {
            let p = BinomialBasisPoly::new(k, coeffs.iter().map(|&c| BigInt::from(c)).collect());
            prop_assert_eq!(p.shifted(k + 1).shifted(k), p.clone());
            prop_assert_eq!(p.shifted(k - 2).shifted(k), p.clone());
            for n in -4i64..6 {
                let n = BigInt::from(n);
                prop_assert_eq!(p.shifted(k + 1).eval(&n), p.eval(&n));
            }
        }
    }
}

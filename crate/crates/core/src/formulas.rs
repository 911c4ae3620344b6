//! Closed forms and recurrences for the descent counts.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{CheckedSub, Zero};

use crate::composition::{compositions, f_beta, Composition};
use crate::descent::DescentSet;
use crate::error::{domain, Error, Result};
use crate::oracle::count_content_u64;
use crate::scalar::{sign_pow, Scalar};
use crate::Count;

/// Binomial coefficient with a polynomial upper argument:
/// `n (n-1) ... (n-r+1) / r!`, for any integer `n`.
pub fn binom_poly<T: Scalar>(n: &T, r: usize) -> T {
    let mut acc = T::one();
    for i in 0..r {
        // acc == C(n, i) here, so acc * (n - i) is divisible by i + 1.
        acc = acc * (n.clone() - T::from_usize_exact(i)) / T::from_usize_exact(i + 1);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

fn to_count(value: BigInt, what: &str) -> Result<Count> {
    value
        .to_biguint()
        .ok_or_else(|| Error::Internal(format!("{what} evaluated to a negative count: {value}")))
}

/// Evaluates `D^m(I, n)` and `d^m(I, n)`, reusing content counts across calls.
#[derive(Debug, Default)]
pub struct Recurrence {
    content: HashMap<(Composition, DescentSet), u64>,
}

impl Recurrence {
    pub fn new() -> Self {
        Self::default()
    }

    /// `D^m(I, n)`: words of length `a_t` over `1..=n` with descent set `I^-`
    /// and no value used more than `m` times. Sums content counts over the
    /// compositions of `a_t` with parts at most `m`, each weighted by the
    /// number of ways to pick its value set.
    pub fn capped_prefix_count(&mut self, set: &DescentSet, n: usize, m: usize) -> Result<Count> {
        let top = set.require_max()?;
        if n == 0 || m == 0 {
            return domain("n and m must be positive");
        }
        let big_n = BigInt::from(n);
        let mut total = BigInt::zero();
        for a in compositions(top, Some(m)) {
            let key = (a, set.clone());
            let c = match self.content.get(&key) {
                Some(&c) => c,
                None => {
                    let c = count_content_u64(&key.0, set)?;
                    self.content.insert(key.clone(), c);
                    c
                }
            };
            if c != 0 {
                total += BigInt::from(c) * binom_poly(&big_n, key.0.len());
            }
        }
        to_count(total, "D^m")
    }

    /// `d^m(I, n)` through `d^m(I, n) = D^m(I, n) - d^m(I^-, n)`, walked up
    /// the chain `{} , {a_1}, {a_1, a_2}, ..., I` from `d^m({}, n) = 1`.
    pub fn descent_count(&mut self, set: &DescentSet, n: usize, m: usize) -> Result<Count> {
        if n == 0 || m == 0 {
            return domain("n and m must be positive");
        }
        let cells = n.saturating_mul(m);
        let chain: Vec<DescentSet> = set.chain().collect();
        let mut below = Count::from(1u8);
        for sub in chain.iter().rev().skip(1) {
            let top = sub.max_element().expect("non-empty past the first link");
            // A descent must sit strictly inside the word.
            if top >= cells {
                return Ok(Count::zero());
            }
            let capped = self.capped_prefix_count(sub, n, m)?;
            below = capped.checked_sub(&below).ok_or_else(|| {
                Error::Internal(format!("D^m({sub}, {n}) smaller than d^m of its prefix set"))
            })?;
        }
        Ok(below)
    }
}

/// See [`Recurrence::capped_prefix_count`].
pub fn capped_prefix_count(set: &DescentSet, n: usize, m: usize) -> Result<Count> {
    Recurrence::new().capped_prefix_count(set, n, m)
}

/// See [`Recurrence::descent_count`].
pub fn descent_count(set: &DescentSet, n: usize, m: usize) -> Result<Count> {
    Recurrence::new().descent_count(set, n, m)
}

/// Calls `term` with `(sign, sigma)` for every composition of `t`.
fn for_each_block_sum(set: &DescentSet, mut term: impl FnMut(usize, &[usize])) -> Result<()> {
    let gaps = set.gaps();
    let t = gaps.len();
    if t == 0 {
        return domain("descent set must be non-empty");
    }
    for a in compositions(t, None) {
        let sigma = f_beta(&gaps, &a)?;
        term(t - sigma.len(), &sigma);
    }
    Ok(())
}

/// Product `C(n-1+s_1, s_1) ... C(n-1+s_{k}, s_{k})` over the given sigmas.
fn head_product<T: Scalar>(n: &T, sigmas: &[usize]) -> T {
    sigmas.iter().fold(T::one(), |acc, &s| {
        acc * binom_poly(&(n.clone() - T::one() + T::from_usize_exact(s)), s)
    })
}

/// Alternating composition sum for the number of words of length `a_t` over
/// `1..=n` with descent set `I^-` whose last letter is `j`.
pub fn last_value_poly<T: Scalar>(set: &DescentSet, n: &T, j: &T) -> Result<T> {
    let mut total = T::zero();
    for_each_block_sum(set, |parity, sigma| {
        let (last, head) = sigma.split_last().expect("at least one block");
        let tail = binom_poly(
            &(j.clone() - T::one() + T::from_usize_exact(*last) - T::one()),
            last - 1,
        );
        total = total.clone() + sign_pow::<T>(parity) * head_product(n, head) * tail;
    })?;
    Ok(total)
}

/// [`last_value_poly`] at a counting point `1 <= j <= n`.
pub fn last_value_formula(set: &DescentSet, n: usize, j: usize) -> Result<Count> {
    if j == 0 || j > n {
        return domain(format!("last value {j} must lie in 1..={n}"));
    }
    let value = last_value_poly::<BigInt>(set, &BigInt::from(n), &BigInt::from(j))?;
    to_count(value, "last-value formula")
}

/// The stabilized polynomial `d^inf(I, n)` evaluated at any integer `n`.
pub fn d_infinity<T: Scalar>(set: &DescentSet, n: &T) -> Result<T> {
    let mut total = T::zero();
    for_each_block_sum(set, |parity, sigma| {
        let (last, head) = sigma.split_last().expect("at least one block");
        let closing =
            binom_poly(&(n.clone() - T::one() + T::from_usize_exact(*last)), *last) - T::one();
        total = total.clone() + sign_pow::<T>(parity) * head_product(n, head) * closing;
    })?;
    Ok(total)
}

/// `d^inf(I, n)` as a count, for `n >= 1`.
pub fn d_infinity_count(set: &DescentSet, n: usize) -> Result<Count> {
    to_count(d_infinity(set, &BigInt::from(n))?, "d^inf")
}

/// Least `m` from which `d^m(I, n)` no longer depends on `m`: `a_t - t + 1`.
pub fn stabilization_point(set: &DescentSet) -> Result<usize> {
    let top = set.require_max()?;
    Ok(top - set.len() + 1)
}

/// All forward differences of order `order` along `values`.
pub fn forward_differences<T: Scalar>(values: &[T], order: usize) -> Vec<T> {
    let mut row = values.to_vec();
    for _ in 0..order {
        row = row.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    }
    row
}

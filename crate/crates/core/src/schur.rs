//! Counting through the ribbon skew Schur function.
//!
//! A permutation with descent set `I` fills the ribbon whose rows, read
//! bottom to top, are its maximal weakly increasing runs. The count is the
//! coefficient of `x_1^m ... x_n^m` in that ribbon's skew Schur function,
//! which the Jacobi-Trudi determinant writes as a signed sum of products of
//! complete homogeneous functions. The coefficient of `x_1^m ... x_n^m` in
//! `h_{u_1} ... h_{u_r}` is the number of `r x n` nonnegative integer
//! matrices with row sums `u` and all column sums `m`.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::descent::DescentSet;
use crate::error::{domain, Error, Result};
use crate::Count;

/// Weakly decreasing sequence of nonnegative integers, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("partition must be weakly decreasing, got {parts:?}"));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (0-indexed); zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<usize> {
        (0..len.max(self.0.len())).map(|i| self.part(i)).collect()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }
}

/// A skew shape `outer / inner` with `rows` rows that is a border strip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonShape {
    pub outer: Partition,
    pub inner: Partition,
    pub rows: usize,
}

impl RibbonShape {
    pub fn cell_count(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Row lengths, top to bottom.
    pub fn row_lengths(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|i| self.outer.part(i) - self.inner.part(i))
            .collect()
    }

    /// Skew, connected, free of 2x2 blocks: consecutive rows share exactly
    /// one column.
    pub fn is_ribbon(&self) -> bool {
        let k = self.rows;
        k >= 1
            && self.outer.parts().len() == k
            && (0..k).all(|i| self.inner.part(i) < self.outer.part(i))
            && (0..k - 1).all(|i| self.inner.part(i) + 1 == self.outer.part(i + 1))
            && self.inner.part(k - 1) == 0
    }
}

/// Ribbon for permutations of `{1^m, ..., n^m}` with descent set `set`: rows
/// top to bottom have lengths `n*m - a_t, b_t, ..., b_1` where `b` are the
/// gaps of the set.
pub fn ribbon_shape(set: &DescentSet, n: usize, m: usize) -> Result<RibbonShape> {
    let top = set.require_max()?;
    let cells = n.saturating_mul(m);
    if cells <= top {
        return domain(format!(
            "n*m = {cells} leaves no cell after the last descent at {top}"
        ));
    }
    let mut lengths = vec![cells - top];
    lengths.extend(set.gaps().into_iter().rev());
    let k = lengths.len();
    let mut outer = vec![0; k];
    let mut inner = vec![0; k];
    outer[k - 1] = lengths[k - 1];
    for i in (0..k - 1).rev() {
        inner[i] = outer[i + 1] - 1;
        outer[i] = inner[i] + lengths[i];
    }
    Ok(RibbonShape {
        outer: Partition::new(outer)?,
        inner: Partition::new(inner)?,
        rows: k,
    })
}

/// One term of the Jacobi-Trudi expansion: `sign * h_{d_1} ... h_{d_r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetTerm {
    /// Positive degrees only; `h_0 = 1` factors are dropped.
    pub h_degrees: Vec<usize>,
    pub sign: i8,
}

fn permutation_sign(perm: &[usize]) -> i8 {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Nonvanishing terms of `det[h_{outer_i - inner_j - i + j}]`.
pub fn jacobi_trudi_terms(shape: &RibbonShape) -> impl Iterator<Item = DetTerm> + '_ {
    let k = shape.rows;
    let outer = shape.outer.padded(k);
    let inner = shape.inner.padded(k);
    (0..k).permutations(k).filter_map(move |perm| {
        let mut h_degrees = Vec::with_capacity(k);
        for (i, &j) in perm.iter().enumerate() {
            let d = outer[i] as i64 - inner[j] as i64 - i as i64 + j as i64;
            match d {
                d if d < 0 => return None,
                0 => {}
                d => h_degrees.push(d as usize),
            }
        }
        Some(DetTerm {
            h_degrees,
            sign: permutation_sign(&perm),
        })
    })
}

/// Coefficient of `x_1^m ... x_n^m` in `h_{u_1} ... h_{u_r}`: the number of
/// nonnegative integer matrices with row sums `u` and `n` columns each
/// summing to `m`. Zero when the degrees do not add up to `n*m`.
pub fn rect_coeff(h_degrees: &[usize], n: usize, m: usize) -> Count {
    if h_degrees.iter().sum::<usize>() != n.saturating_mul(m) {
        return Count::zero();
    }
    let mut start: Vec<usize> = h_degrees.iter().copied().filter(|&u| u > 0).collect();
    start.sort_unstable();
    let mut table = RectTable {
        m,
        memo: HashMap::new(),
    };
    table.completions(n, start)
}

struct RectTable {
    m: usize,
    memo: HashMap<(usize, Vec<usize>), Count>,
}

impl RectTable {
    /// Ways to fill `cols` more columns given the remaining row sums
    /// (sorted, zeros dropped; the count only depends on the multiset).
    fn completions(&mut self, cols: usize, remaining: Vec<usize>) -> Count {
        if cols == 0 {
            return if remaining.is_empty() {
                Count::one()
            } else {
                Count::zero()
            };
        }
        if let Some(hit) = self.memo.get(&(cols, remaining.clone())) {
            return hit.clone();
        }
        let mut total = Count::zero();
        let mut take = vec![0; remaining.len()];
        self.split_column(cols, &remaining, &mut take, 0, self.m, &mut total);
        self.memo.insert((cols, remaining), total.clone());
        total
    }

    /// Distributes `left` units of the current column over rows `row..`.
    fn split_column(
        &mut self,
        cols: usize,
        remaining: &[usize],
        take: &mut Vec<usize>,
        row: usize,
        left: usize,
        total: &mut Count,
    ) {
        if row == remaining.len() {
            if left == 0 {
                let mut next: Vec<usize> = remaining
                    .iter()
                    .zip(take.iter())
                    .map(|(r, t)| r - t)
                    .filter(|&r| r > 0)
                    .collect();
                next.sort_unstable();
                *total += self.completions(cols - 1, next);
            }
            return;
        }
        let capacity: usize = remaining[row + 1..].iter().sum();
        let lo = left.saturating_sub(capacity);
        for x in lo..=left.min(remaining[row]) {
            take[row] = x;
            self.split_column(cols, remaining, take, row + 1, left - x, total);
        }
        take[row] = 0;
    }
}

/// `d^m(I, n)` as the signed Jacobi-Trudi sum of matrix counts.
pub fn count_via_jacobi_trudi(set: &DescentSet, n: usize, m: usize) -> Result<Count> {
    let shape = ribbon_shape(set, n, m)?;
    let mut total = BigInt::zero();
    for term in jacobi_trudi_terms(&shape) {
        let c = BigInt::from(rect_coeff(&term.h_degrees, n, m));
        if term.sign > 0 {
            total += c;
        } else {
            total -= c;
        }
    }
    total.to_biguint().ok_or_else(|| {
        Error::Internal(format!("Jacobi-Trudi sum for {set}, n={n}, m={m} is negative: {total}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{naive_histogram, EnumerationBudget};
    use proptest::prelude::*;

    fn set(v: &[usize]) -> DescentSet {
        DescentSet::new(v.to_vec()).unwrap()
    }

    fn shape(outer: &[usize], inner: &[usize]) -> RibbonShape {
        RibbonShape {
            outer: Partition::new(outer.to_vec()).unwrap(),
            inner: Partition::new(inner.to_vec()).unwrap(),
            rows: outer.len(),
        }
    }

    /// Brute-force matrix count for small cases.
    fn matrices(rows: &[usize], n: usize, m: usize) -> u64 {
        fn go(rows: &mut Vec<usize>, col: usize, n: usize, m: usize) -> u64 {
            if col == n {
                return u64::from(rows.iter().all(|&r| r == 0));
            }
            fn fill(rows: &mut Vec<usize>, i: usize, left: usize, col: usize, n: usize, m: usize) -> u64 {
                if i == rows.len() {
                    return if left == 0 { go(rows, col + 1, n, m) } else { 0 };
                }
                let mut total = 0;
                for x in 0..=left.min(rows[i]) {
                    rows[i] -= x;
                    total += fill(rows, i + 1, left - x, col, n, m);
                    rows[i] += x;
                }
                total
            }
            fill(rows, 0, m, col, n, m)
        }
        go(&mut rows.to_vec(), 0, n, m)
    }

    #[test]
    fn ribbon_examples() {
        let r = ribbon_shape(&set(&[4, 8, 9]), 5, 3).unwrap();
        assert_eq!(r.outer.parts(), &[12, 7, 7, 4]);
        assert_eq!(r.inner.padded(4), vec![6, 6, 3, 0]);
        assert_eq!(r.cell_count(), 15);
        assert_eq!(r.row_lengths(), vec![6, 1, 4, 4]);
        assert!(r.is_ribbon());

        let r = ribbon_shape(&set(&[2]), 3, 2).unwrap();
        assert_eq!(r.outer.parts(), &[5, 2]);
        assert_eq!(r.inner.padded(2), vec![1, 0]);

        // Two one-cell rows sharing a column: a vertical domino.
        let r = ribbon_shape(&set(&[1]), 1, 2).unwrap();
        assert_eq!(r.outer.parts(), &[1, 1]);
        assert_eq!(r.cell_count(), 2);
        assert!(r.inner.parts().is_empty());

        assert!(ribbon_shape(&set(&[3]), 1, 3).is_err());
        assert!(ribbon_shape(&DescentSet::empty(), 3, 3).is_err());
    }

    #[test]
    fn terms_examples() {
        let terms: Vec<_> = jacobi_trudi_terms(&shape(&[5, 2], &[1, 0])).collect();
        assert_eq!(
            terms,
            vec![
                DetTerm { h_degrees: vec![4, 2], sign: 1 },
                DetTerm { h_degrees: vec![6], sign: -1 },
            ]
        );
        let terms: Vec<_> = jacobi_trudi_terms(&shape(&[1], &[0])).collect();
        assert_eq!(terms, vec![DetTerm { h_degrees: vec![1], sign: 1 }]);
        let terms: Vec<_> = jacobi_trudi_terms(&shape(&[2, 1], &[0, 0])).collect();
        assert_eq!(
            terms,
            vec![
                DetTerm { h_degrees: vec![2, 1], sign: 1 },
                DetTerm { h_degrees: vec![3], sign: -1 },
            ]
        );
    }

    #[test]
    fn rect_coeff_examples() {
        assert_eq!(rect_coeff(&[4, 2], 3, 2), Count::from(6u8));
        assert_eq!(rect_coeff(&[6], 3, 2), Count::from(1u8));
        assert_eq!(rect_coeff(&[1, 1], 2, 1), Count::from(2u8));
        assert_eq!(rect_coeff(&[5], 3, 2), Count::zero());
    }

    #[test]
    fn rect_coeff_matches_brute_force() {
        for rows in [vec![3, 2, 1], vec![4, 4], vec![2, 2, 2, 2], vec![1, 5, 2]] {
            let total: usize = rows.iter().sum();
            for n in 1..=total {
                if total.is_multiple_of(n) {
                    let m = total / n;
                    assert_eq!(rect_coeff(&rows, n, m), Count::from(matrices(&rows, n, m)), "{rows:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn jt_examples() {
        assert_eq!(count_via_jacobi_trudi(&set(&[2]), 3, 2).unwrap(), Count::from(5u8));
        assert_eq!(count_via_jacobi_trudi(&set(&[1]), 2, 1).unwrap(), Count::from(1u8));
        assert_eq!(count_via_jacobi_trudi(&set(&[1, 2]), 3, 1).unwrap(), Count::from(1u8));
    }

    #[test]
    fn jt_matches_naive_on_desk_grid() {
        let b = EnumerationBudget::default();
        for n in 1..=4 {
            for m in 1..=3 {
                let hist = naive_histogram(n, m, &b).unwrap();
                for s in DescentSet::all_nonempty_within(4) {
                    if n * m <= s.max_element().unwrap() {
                        continue;
                    }
                    let r = ribbon_shape(&s, n, m).unwrap();
                    assert!(r.is_ribbon());
                    assert_eq!(r.cell_count(), n * m);
                    assert_eq!(r.rows, s.len() + 1);
                    let expect = hist.get(&s).cloned().unwrap_or_default();
                    assert_eq!(count_via_jacobi_trudi(&s, n, m).unwrap(), expect, "{s} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn single_factor() {
        for n in 1..=4 {
            for m in 1..=3 {
                for u in 0..=n * m + 1 {
                    let expect = if u == n * m { 1u8 } else { 0 };
                    assert_eq!(rect_coeff(&[u], n, m), Count::from(expect));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rect_coeff_is_symmetric(rows in proptest::collection::vec(0usize..5, 1..5), seed in any::<u64>()) {
            let total: usize = rows.iter().sum();
            prop_assume!(total > 0);
            let n = (1..=total).filter(|d| total.is_multiple_of(*d)).nth((seed % 3) as usize).unwrap_or(1);
            let m = total / n;
            let mut shuffled = rows.clone();
            shuffled.rotate_left((seed as usize) % rows.len());
            shuffled.reverse();
            prop_assert_eq!(rect_coeff(&rows, n, m), rect_coeff(&shuffled, n, m));
        }
    }
}

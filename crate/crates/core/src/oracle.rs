//! Brute-force counters.
//!
//! Everything here counts words by walking them one by one. These are the
//! ground truth the closed forms in [`crate::formulas`], [`crate::schur`] and
//! [`crate::polybasis`] are checked against, so nothing in this module calls
//! into those.

use std::collections::BTreeMap;

use crate::composition::Composition;
use crate::descent::DescentSet;
use crate::error::{domain, Error, Result};
use crate::Count;

/// Caps on how much work the enumerators may do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    /// Largest `n * m` that [`count_naive`] will enumerate.
    pub max_total_cells: usize,
    /// Largest number of search nodes [`count_prefix_budgeted`] may visit.
    pub max_prefix_states: u64,
}

impl EnumerationBudget {
    pub fn new(max_total_cells: usize, max_prefix_states: u64) -> Result<Self> {
        if max_total_cells == 0 || max_prefix_states == 0 {
            return domain("enumeration budgets must be at least 1");
        }
        Ok(Self {
            max_total_cells,
            max_prefix_states,
        })
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self {
            max_total_cells: 12,
            max_prefix_states: 200_000_000,
        }
    }
}

/// How often each value may occur in a word.
#[derive(Debug, Clone, Copy)]
enum Cap<'a> {
    Unlimited,
    Uniform(usize),
    /// `exact[v - 1]` is the largest multiplicity of value `v`.
    PerValue(&'a [usize]),
}

impl Cap<'_> {
    #[inline]
    fn allows(&self, value: usize, used: usize) -> bool {
        match *self {
            Cap::Unlimited => true,
            Cap::Uniform(m) => used < m,
            Cap::PerValue(c) => used < c[value - 1],
        }
    }
}

/// Depth-first walk over words of a fixed length whose descent set is
/// prescribed, with values drawn from `lo..=hi`.
struct WordSearch<'a> {
    len: usize,
    /// `descent[p]` (1-indexed) forces `v_p > v_{p+1}`; otherwise `v_p <= v_{p+1}`.
    descent: Vec<bool>,
    lo: usize,
    hi: usize,
    cap: Cap<'a>,
    /// Every value in this range must occur at least once.
    cover: Option<(usize, usize)>,
    node_limit: u64,
}

struct WalkState {
    word: Vec<usize>,
    usage: Vec<usize>,
    missing: usize,
    nodes: u64,
}

impl<'a> WordSearch<'a> {
    fn new(len: usize, descents: &DescentSet, lo: usize, hi: usize) -> Self {
        Self {
            len,
            descent: descents.mask(len),
            lo,
            hi,
            cap: Cap::Unlimited,
            cover: None,
            node_limit: u64::MAX,
        }
    }

    fn cap(mut self, cap: Cap<'a>) -> Self {
        self.cap = cap;
        self
    }

    fn cover(mut self, lo: usize, hi: usize) -> Self {
        self.cover = (lo <= hi).then_some((lo, hi));
        self
    }

    fn node_limit(mut self, limit: u64) -> Self {
        self.node_limit = limit;
        self
    }

    /// Counts complete words accepted by `leaf`, which sees the word and the
    /// usage table indexed by value.
    fn count(&self, mut leaf: impl FnMut(&[usize], &[usize]) -> bool) -> Result<u64> {
        if self.len == 0 || self.lo > self.hi || self.lo == 0 {
            return Ok(0);
        }
        let missing = self.cover.map_or(0, |(a, b)| b - a + 1);
        if missing > self.len {
            return Ok(0);
        }
        let mut state = WalkState {
            word: Vec::with_capacity(self.len),
            usage: vec![0; self.hi + 1],
            missing,
            nodes: 0,
        };
        self.walk(&mut state, &mut leaf)
    }

    fn walk(
        &self,
        st: &mut WalkState,
        leaf: &mut impl FnMut(&[usize], &[usize]) -> bool,
    ) -> Result<u64> {
        st.nodes += 1;
        if st.nodes > self.node_limit {
            return Err(Error::Budget {
                what: "prefix search nodes",
                actual: st.nodes as u128,
                limit: self.node_limit as u128,
            });
        }
        let pos = st.word.len();
        if pos == self.len {
            return Ok(u64::from(st.missing == 0 && leaf(&st.word, &st.usage)));
        }
        if st.missing > self.len - pos {
            return Ok(0);
        }
        let (from, to) = match st.word.last() {
            None => (self.lo, self.hi),
            // `pos` is the 1-indexed position of the previous letter.
            Some(&prev) if self.descent[pos] => (self.lo, prev.saturating_sub(1)),
            Some(&prev) => (prev, self.hi),
        };
        let mut total = 0;
        for v in from..=to {
            if !self.cap.allows(v, st.usage[v]) {
                continue;
            }
            let newly_covered = st.usage[v] == 0
                && self.cover.is_some_and(|(a, b)| (a..=b).contains(&v));
            st.usage[v] += 1;
            st.missing -= usize::from(newly_covered);
            st.word.push(v);
            let sub = self.walk(st, leaf);
            st.word.pop();
            st.missing += usize::from(newly_covered);
            st.usage[v] -= 1;
            total += sub?;
        }
        Ok(total)
    }
}

/// Rearranges `word` into its lexicographic successor; false once it is the
/// last arrangement.
fn next_permutation(word: &mut [usize]) -> bool {
    let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) else {
        return false;
    };
    let pivot = i - 1;
    let j = (i..word.len())
        .rev()
        .find(|&j| word[j] > word[pivot])
        .expect("a larger element exists right of the pivot");
    word.swap(pivot, j);
    word[i..].reverse();
    true
}

fn check_cells(n: usize, m: usize, budget: &EnumerationBudget) -> Result<()> {
    if n == 0 || m == 0 {
        return domain("n and m must be positive");
    }
    let cells = n.saturating_mul(m);
    if cells > budget.max_total_cells {
        return Err(Error::Budget {
            what: "n*m",
            actual: cells as u128,
            limit: budget.max_total_cells as u128,
        });
    }
    Ok(())
}

fn sorted_multiset(n: usize, m: usize) -> Vec<usize> {
    (1..=n).flat_map(|v| std::iter::repeat_n(v, m)).collect()
}

/// Number of permutations of `{1^m, ..., n^m}` with descent set exactly `set`,
/// by walking every distinct permutation.
pub fn count_naive(
    set: &DescentSet,
    n: usize,
    m: usize,
    budget: &EnumerationBudget,
) -> Result<Count> {
    check_cells(n, m, budget)?;
    let mut word = sorted_multiset(n, m);
    let len = word.len();
    if set.max_element().is_some_and(|a| a >= len) {
        return Ok(Count::from(0u8));
    }
    let mask = set.mask(len);
    let mut hits: u64 = 0;
    loop {
        if (1..len).all(|i| (word[i - 1] > word[i]) == mask[i]) {
            hits += 1;
        }
        if !next_permutation(&mut word) {
            break;
        }
    }
    Ok(Count::from(hits))
}

/// Descent-set histogram of all permutations of `{1^m, ..., n^m}`.
pub fn naive_histogram(
    n: usize,
    m: usize,
    budget: &EnumerationBudget,
) -> Result<BTreeMap<DescentSet, Count>> {
    check_cells(n, m, budget)?;
    let mut word = sorted_multiset(n, m);
    let mut tally: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    let mut des = Vec::new();
    loop {
        des.clear();
        des.extend((1..word.len()).filter(|&i| word[i - 1] > word[i]));
        match tally.get_mut(&des) {
            Some(c) => *c += 1,
            None => {
                tally.insert(des.clone(), 1);
            }
        }
        if !next_permutation(&mut word) {
            break;
        }
    }
    tally
        .into_iter()
        .map(|(d, c)| Ok((DescentSet::new(d)?, Count::from(c))))
        .collect()
}

/// Counts permutations with descent set `set` through their first `a_t`
/// letters: the rest of the word is the leftover multiset in increasing
/// order, so a prefix qualifies iff its own descent set is `set^-` and its
/// last letter exceeds the smallest leftover value.
pub fn count_prefix(set: &DescentSet, n: usize, m: usize) -> Result<Count> {
    count_prefix_within(set, n, m, u64::MAX)
}

/// [`count_prefix`] that gives up after `budget.max_prefix_states` search nodes.
pub fn count_prefix_budgeted(
    set: &DescentSet,
    n: usize,
    m: usize,
    budget: &EnumerationBudget,
) -> Result<Count> {
    count_prefix_within(set, n, m, budget.max_prefix_states)
}

fn count_prefix_within(set: &DescentSet, n: usize, m: usize, limit: u64) -> Result<Count> {
    let top = set.require_max()?;
    if n == 0 || m == 0 {
        return domain("n and m must be positive");
    }
    if top >= n.saturating_mul(m) {
        return Ok(Count::from(0u8));
    }
    let head = set.without_max();
    let hits = WordSearch::new(top, &head, 1, n)
        .cap(Cap::Uniform(m))
        .node_limit(limit)
        .count(|word, usage| {
            let next = (1..=n)
                .find(|&c| usage[c] < m)
                .expect("a_t < n*m leaves a letter over");
            word[top - 1] > next
        })?;
    Ok(Count::from(hits))
}

/// Words of length `a_t` over `1..=n`, each value used at most `m` times,
/// with descent set `set^-`.
pub fn count_capped(set: &DescentSet, n: usize, m: usize) -> Result<Count> {
    let top = set.require_max()?;
    let hits = WordSearch::new(top, &set.without_max(), 1, n)
        .cap(Cap::Uniform(m))
        .count(|_, _| true)?;
    Ok(Count::from(hits))
}

/// Words of length `a_t` with descent set `set^-` in which value `j` occurs
/// exactly `content[j-1]` times.
pub fn count_content(content: &Composition, set: &DescentSet) -> Result<Count> {
    Ok(Count::from(count_content_u64(content, set)?))
}

pub(crate) fn count_content_u64(content: &Composition, set: &DescentSet) -> Result<u64> {
    let top = set.require_max()?;
    if content.sum() != top {
        return domain(format!(
            "composition {content} sums to {}, expected a_t = {top}",
            content.sum()
        ));
    }
    WordSearch::new(top, &set.without_max(), 1, content.len())
        .cap(Cap::PerValue(content.parts()))
        .count(|_, _| true)
}

/// Words of length `a_t` over `1..=n` with descent set `set^-` ending in `j`.
pub fn count_last_fixed(set: &DescentSet, n: usize, j: usize) -> Result<Count> {
    let top = set.require_max()?;
    if j == 0 || j > n {
        return domain(format!("last value {j} must lie in 1..={n}"));
    }
    let hits = WordSearch::new(top, &set.without_max(), 1, n).count(|w, _| w[top - 1] == j)?;
    Ok(Count::from(hits))
}

/// Words of length `a_t` with descent set `set^-` over `1..=n` not ending in 1.
pub fn count_stable_words(set: &DescentSet, n: usize) -> Result<Count> {
    let top = set.require_max()?;
    let hits = WordSearch::new(top, &set.without_max(), 1, n).count(|w, _| w[top - 1] != 1)?;
    Ok(Count::from(hits))
}

/// Words of length `a_t` with descent set `set^-`, values in `1..=i+1`, every
/// value of `2..=i+1` present, last letter not 1.
pub fn count_b_sequences(set: &DescentSet, i: usize) -> Result<Count> {
    let top = set.require_max()?;
    let hits = WordSearch::new(top, &set.without_max(), 1, i + 1)
        .cover(2, i + 1)
        .count(|w, _| w[top - 1] != 1)?;
    Ok(Count::from(hits))
}

/// Words of length `a_t` with descent set `set^-` using exactly the values `2..=i+1`.
pub fn count_x(set: &DescentSet, i: usize) -> Result<Count> {
    let top = set.require_max()?;
    let hits = WordSearch::new(top, &set.without_max(), 2, i + 1)
        .cover(2, i + 1)
        .count(|_, _| true)?;
    Ok(Count::from(hits))
}

/// Words of length `a_t` with descent set `set^-` using exactly the values
/// `1..=i+1`, last letter not 1.
pub fn count_y(set: &DescentSet, i: usize) -> Result<Count> {
    let top = set.require_max()?;
    let hits = WordSearch::new(top, &set.without_max(), 1, i + 1)
        .cover(1, i + 1)
        .count(|w, _| w[top - 1] != 1)?;
    Ok(Count::from(hits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> DescentSet {
        DescentSet::new(v.to_vec()).unwrap()
    }

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn next_permutation_visits_distinct_arrangements() {
        let mut w = vec![1, 1, 2, 2];
        let mut seen = vec![w.clone()];
        while next_permutation(&mut w) {
            seen.push(w.clone());
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn naive_examples() {
        let b = EnumerationBudget::default();
        assert_eq!(count_naive(&set(&[2]), 3, 2, &b).unwrap(), c(5));
        assert_eq!(count_naive(&DescentSet::empty(), 3, 2, &b).unwrap(), c(1));
        assert_eq!(count_naive(&DescentSet::empty(), 1, 1, &b).unwrap(), c(1));
        assert_eq!(count_naive(&set(&[1]), 2, 1, &b).unwrap(), c(1));
    }

    #[test]
    fn naive_budget_names_the_bound() {
        let b = EnumerationBudget::default();
        let err = count_naive(&set(&[1]), 5, 3, &b).unwrap_err();
        assert_eq!(
            err,
            Error::Budget {
                what: "n*m",
                actual: 15,
                limit: 12
            }
        );
        assert!(err.to_string().contains("12"));
    }

    #[test]
    fn histogram_sums_to_multinomial() {
        let b = EnumerationBudget::default();
        let h = naive_histogram(3, 2, &b).unwrap();
        let total: Count = h.values().sum();
        assert_eq!(total, c(90));
        assert_eq!(h[&set(&[2])], c(5));
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(count_prefix(&set(&[2]), 3, 2).unwrap(), c(5));
        assert_eq!(count_prefix(&set(&[2]), 1, 1).unwrap(), c(0));
        assert_eq!(count_prefix(&set(&[1, 2]), 3, 1).unwrap(), c(1));
        assert!(count_prefix(&DescentSet::empty(), 3, 1).is_err());
    }

    #[test]
    fn prefix_budget_trips() {
        let b = EnumerationBudget::new(12, 10).unwrap();
        assert!(matches!(
            count_prefix_budgeted(&set(&[3, 5]), 4, 2, &b),
            Err(Error::Budget { .. })
        ));
        assert!(EnumerationBudget::new(0, 1).is_err());
    }

    #[test]
    fn content_examples() {
        assert_eq!(count_content(&comp(&[1, 1]), &set(&[2])).unwrap(), c(1));
        assert_eq!(count_content(&comp(&[2]), &set(&[2])).unwrap(), c(1));
        assert_eq!(count_content(&comp(&[1, 1]), &set(&[1, 2])).unwrap(), c(1));
        assert!(count_content(&comp(&[1, 2]), &set(&[2])).is_err());
    }

    #[test]
    fn last_fixed_examples() {
        assert_eq!(count_last_fixed(&set(&[2]), 3, 2).unwrap(), c(2));
        assert_eq!(count_last_fixed(&set(&[1]), 2, 1).unwrap(), c(1));
        assert_eq!(count_last_fixed(&set(&[2]), 1, 1).unwrap(), c(1));
        assert!(count_last_fixed(&set(&[2]), 3, 4).is_err());
    }

    #[test]
    fn b_x_y_examples() {
        let s = set(&[2]);
        assert_eq!(count_b_sequences(&s, 1).unwrap(), c(2));
        assert_eq!(count_b_sequences(&s, 2).unwrap(), c(1));
        assert_eq!(count_b_sequences(&s, 0).unwrap(), c(0));
        assert_eq!(count_x(&s, 1).unwrap(), c(1));
        assert_eq!(count_y(&s, 1).unwrap(), c(1));
        assert_eq!(count_x(&s, 0).unwrap(), c(0));
    }

    #[test]
    fn capped_matches_definition() {
        // {2}, n=3, m=2: weakly increasing pairs over 1..=3: 6.
        assert_eq!(count_capped(&set(&[2]), 3, 2).unwrap(), c(6));
        // m=1 forbids (v,v).
        assert_eq!(count_capped(&set(&[2]), 3, 1).unwrap(), c(3));
        assert_eq!(count_capped(&set(&[1]), 2, 1).unwrap(), c(2));
    }

    #[test]
    fn prefix_agrees_with_naive_on_desk_grid() {
        let b = EnumerationBudget::default();
        for n in 1..=4 {
            for m in 1..=3 {
                let hist = naive_histogram(n, m, &b).unwrap();
                for s in DescentSet::all_nonempty_within(4) {
                    let naive = hist.get(&s).cloned().unwrap_or_default();
                    assert_eq!(count_prefix(&s, n, m).unwrap(), naive, "{s} n={n} m={m}");
                    assert_eq!(count_naive(&s, n, m, &b).unwrap(), naive, "{s} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn monotone_in_m_above_max() {
        for s in DescentSet::all_nonempty_within(4) {
            let top = s.max_element().unwrap();
            for n in top + 1..=top + 2 {
                let counts: Vec<Count> = (1..=top + 2)
                    .map(|m| count_prefix(&s, n, m).unwrap())
                    .collect();
                assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{s} n={n}: {counts:?}");
            }
        }
    }

    #[test]
    fn b_splits_into_x_and_y() {
        for s in DescentSet::all_nonempty_within(4) {
            let top = s.max_element().unwrap();
            for i in 0..=top + 1 {
                let b = count_b_sequences(&s, i).unwrap();
                let xy = count_x(&s, i).unwrap() + count_y(&s, i).unwrap();
                assert_eq!(b, xy, "{s} i={i}");
            }
        }
    }

    #[test]
    fn x_shift_relation() {
        for s in DescentSet::all_nonempty_within(4).filter(|s| s.len() >= 2) {
            let head = s.without_max();
            for i in 0..=s.max_element().unwrap() {
                let lhs = count_x(&s, i + 1).unwrap();
                let rhs = count_y(&s, i).unwrap() + count_b_sequences(&head, i).unwrap();
                assert_eq!(lhs, rhs, "{s} i={i}");
            }
        }
    }

    #[test]
    fn last_fixed_sums_to_stable_count() {
        for s in DescentSet::all_nonempty_within(4) {
            let top = s.max_element().unwrap();
            let big_m = top - s.len() + 1;
            for n in top..=top + 2 {
                let sum: Count = (2..=n).map(|j| count_last_fixed(&s, n, j).unwrap()).sum();
                assert_eq!(sum, count_prefix(&s, n, big_m).unwrap(), "{s} n={n}");
                assert_eq!(sum, count_stable_words(&s, n).unwrap(), "{s} n={n}");
            }
        }
    }
}

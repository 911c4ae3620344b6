//! Descent sets and the quantities derived from them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// A finite set of positive integers `a_1 < a_2 < ... < a_t`.
///
/// Positions are 1-indexed: `i` is a descent of a word `v` when
/// `v_i > v_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct DescentSet {
    elements: Vec<usize>,
}

impl DescentSet {
    /// Builds a set from strictly increasing positive integers.
    pub fn new(elements: Vec<usize>) -> Result<Self> {
        if elements.first() == Some(&0) {
            return domain("descent positions are 1-indexed; 0 is not allowed");
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return domain(format!(
                "descent set must be strictly increasing, got {elements:?}"
            ));
        }
        Ok(Self { elements })
    }

    /// Sorts and deduplicates before validating.
    pub fn from_unsorted(mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        Self::new(elements)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// `t`, the number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.elements.binary_search(&position).is_ok()
    }

    /// Largest element `a_t`, or `None` for the empty set.
    pub fn max_element(&self) -> Option<usize> {
        self.elements.last().copied()
    }

    pub(crate) fn require_max(&self) -> Result<usize> {
        self.max_element()
            .ok_or_else(|| Error::Domain("descent set must be non-empty".into()))
    }

    /// The set without its largest element. The empty set maps to itself.
    pub fn without_max(&self) -> DescentSet {
        let mut elements = self.elements.clone();
        elements.pop();
        DescentSet { elements }
    }

    /// Length of the longest run of consecutive integers.
    pub fn longest_run(&self) -> Result<usize> {
        if self.is_empty() {
            return domain("longest run is undefined for the empty set");
        }
        let mut best = 1;
        let mut current = 1;
        for w in self.elements.windows(2) {
            if w[1] == w[0] + 1 {
                current += 1;
                best = best.max(current);
            } else {
                current = 1;
            }
        }
        Ok(best)
    }

    /// First differences of `(0, a_1, ..., a_t)`.
    pub fn gaps(&self) -> Vec<usize> {
        let mut prev = 0;
        self.elements
            .iter()
            .map(|&a| {
                let gap = a - prev;
                prev = a;
                gap
            })
            .collect()
    }

    /// Rebuilds a set from its gap vector (partial sums).
    pub fn from_gaps(gaps: &[usize]) -> Result<Self> {
        if gaps.contains(&0) {
            return domain("gaps must be positive");
        }
        let elements = gaps
            .iter()
            .scan(0, |acc, g| {
                *acc += g;
                Some(*acc)
            })
            .collect();
        Self::new(elements)
    }

    /// Boolean mask over positions `0..=len`: `mask[i]` is true iff `i` is in the set.
    pub(crate) fn mask(&self, len: usize) -> Vec<bool> {
        let mut mask = vec![false; len + 1];
        for &a in &self.elements {
            if a <= len {
                mask[a] = true;
            }
        }
        mask
    }

    /// The descent sets `I, I^-, I^--, ..., {}` in that order.
    pub fn chain(&self) -> impl Iterator<Item = DescentSet> + '_ {
        (0..=self.len())
            .rev()
            .map(|k| DescentSet {
                elements: self.elements[..k].to_vec(),
            })
    }

    /// Every non-empty subset of `{1, ..., max_element}`, ordered by bitmask.
    pub fn all_nonempty_within(max_element: usize) -> impl Iterator<Item = DescentSet> {
        assert!(max_element < 64, "subset enumeration limited to 63 elements");
        (1u64..(1u64 << max_element)).map(move |mask| DescentSet {
            elements: (1..=max_element)
                .filter(|&i| mask & (1 << (i - 1)) != 0)
                .collect(),
        })
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// Parses `"2,4,5"`. Whitespace and surrounding braces are tolerated; an
/// empty string (or `{}`) is the empty set.
impl FromStr for DescentSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if trimmed.is_empty() {
            return Ok(Self::empty());
        }
        let elements = trimmed
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| Error::Domain(format!("not a positive integer: {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(elements)
    }
}

/// Descent set of a finite word of positive integers.
pub fn descent_set(values: &[usize]) -> Result<DescentSet> {
    if values.is_empty() {
        return domain("descent set of an empty sequence is undefined");
    }
    let elements = values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .collect();
    Ok(DescentSet { elements })
}

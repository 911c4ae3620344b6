//! Integer compositions, generated lazily in lexicographic order.

use std::fmt;

use crate::error::{domain, Result};

/// An ordered sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return domain("a composition has at least one part");
        }
        if parts.contains(&0) {
            return domain(format!("composition parts must be positive, got {parts:?}"));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn max_part(&self) -> usize {
        self.parts.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Lexicographic stream of the compositions of `total`, with every part at
/// most `bound` when one is given. `total == 0` yields nothing.
pub fn compositions(total: usize, bound: Option<usize>) -> Compositions {
    let bound = bound.unwrap_or(usize::MAX);
    let next = (total > 0 && bound > 0).then(|| vec![1; total]);
    Compositions { next, bound }
}

/// Iterator returned by [`compositions`].
#[derive(Debug, Clone)]
pub struct Compositions {
    next: Option<Vec<usize>>,
    bound: usize,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        // Successor: bump the rightmost part (other than the last) that is
        // below the bound, then spread what is left as ones.
        let s = current.len();
        if let Some(i) = (0..s.saturating_sub(1)).rev().find(|&i| current[i] < self.bound) {
            let tail: usize = current[i..].iter().sum();
            let mut succ = current[..i].to_vec();
            succ.push(current[i] + 1);
            succ.extend(std::iter::repeat_n(1, tail - current[i] - 1));
            self.next = Some(succ);
        }
        Some(Composition { parts: current })
    }
}

/// Block sums of `weights` cut by `blocks`: the `j`-th output sums the
/// `j`-th consecutive run of `blocks.parts()[j]` weights.
pub fn f_beta(weights: &[usize], blocks: &Composition) -> Result<Vec<usize>> {
    if blocks.sum() != weights.len() {
        return domain(format!(
            "composition {blocks} sums to {}, but there are {} weights",
            blocks.sum(),
            weights.len()
        ));
    }
    let mut rest = weights;
    Ok(blocks
        .parts()
        .iter()
        .map(|&a| {
            let (block, tail) = rest.split_at(a);
            rest = tail;
            block.iter().sum()
        })
        .collect())
}

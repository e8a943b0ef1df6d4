//! Lexicographic indexing of `m`-subsets of `{0, .., N-1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binomial coefficient, exact for the sizes used here (N ≤ 64).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Strictly increasing tuple of column indices labelling a basis vector
/// `e_{i0} ∧ ... ∧ e_{i(m-1)}` of the exterior power.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Shape(format!("index {entries:?} is not strictly increasing")));
        }
        Ok(MultiIndex(entries))
    }

    /// Sorts `entries`, returning the permutation sign, or `None` on a repeat.
    pub fn sorted_with_sign(mut entries: Vec<usize>) -> Option<(Self, bool)> {
        let mut negative = false;
        // insertion sort, counting transpositions
        for i in 1..entries.len() {
            let mut j = i;
            while j > 0 && entries[j - 1] > entries[j] {
                entries.swap(j - 1, j);
                negative = !negative;
                j -= 1;
            }
        }
        if entries.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((MultiIndex(entries), negative))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Position among all `m`-subsets of `{0..ambient}` in lexicographic order.
    pub fn rank(&self, ambient: usize) -> usize {
        let m = self.0.len();
        let sub: usize = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &c)| binomial(ambient - 1 - c, m - i))
            .sum();
        binomial(ambient, m) - 1 - sub
    }

    pub fn unrank(mut pos: usize, m: usize, ambient: usize) -> Result<Self> {
        if pos >= binomial(ambient, m) {
            return Err(Error::Shape(format!(
                "position {pos} out of range for {m}-subsets of {ambient}"
            )));
        }
        let mut out = Vec::with_capacity(m);
        let mut c = 0;
        for i in 0..m {
            loop {
                let block = binomial(ambient - 1 - c, m - 1 - i);
                if pos < block {
                    break;
                }
                pos -= block;
                c += 1;
            }
            out.push(c);
            c += 1;
        }
        Ok(MultiIndex(out))
    }
}

/// Iterates `m`-subsets of `{0..n}` in lexicographic order.
pub fn subsets(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if m <= n { Some((0..m).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = {
            let mut c = out.clone();
            let mut i = m;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < n - m + i {
                    c[i] += 1;
                    for j in i + 1..m {
                        c[j] = c[j - 1] + 1;
                    }
                    break Some(c);
                }
            }
        };
        cur = next;
        Some(out)
    })
}

//! Permutations of a finite state set `{0, ..., n-1}`.
//!
//! Composition is written in time order: `a.then(&b)` applies `a` first and
//! `b` second, which is the order instructions execute in a ROM program.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `{0, ..., n-1}` stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from `images[s]` = image of `s`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (s, &t) in images.iter().enumerate() {
            if t >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {t} of state {s} is outside 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidPermutation(format!(
                    "state {t} is the image of more than one state"
                )));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation on `n` states from disjoint cycles, each written
    /// as `(a b c)` meaning `a -> b -> c -> a`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle element {a} is outside 0..{n}"
                    )));
                }
                if std::mem::replace(&mut touched[a], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "state {a} appears in more than one cycle position"
                    )));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Every permutation of `n` states, in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let pivot = i - 1;
            let k = (i..n).rev().find(|&k| current[k] > current[pivot]).unwrap();
            current.swap(pivot, k);
            current[i..].reverse();
        }
        out
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, state: usize) -> usize {
        self.images[state]
    }

    /// `self` followed by `next`, i.e. `s -> next(self(s))`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        assert_eq!(self.len(), next.len(), "composing permutations of different sizes");
        Permutation {
            images: self.images.iter().map(|&s| next.images[s]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (s, &t) in self.images.iter().enumerate() {
            images[t] = s;
        }
        Permutation { images }
    }

    /// `theta ∘ self ∘ theta^{-1}`: relabels every state `s` as `theta(s)`.
    pub fn conjugated_by(&self, theta: &Permutation) -> Permutation {
        theta.inverse().then(self).then(theta)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(s, &t)| s == t)
    }

    /// Non-trivial cycles, each starting at its smallest element, ordered by
    /// that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                cycle.push(s);
                s = self.images[s];
            }
            out.push(cycle);
        }
        out
    }

    /// True when the permutation is a single cycle through all its states.
    pub fn is_full_cycle(&self) -> bool {
        let cycles = self.cycles();
        cycles.len() == 1 && cycles[0].len() == self.len()
    }

    /// Extends a permutation on `labels.len()` states to `n` states by
    /// renaming state `a` to `labels[a]`; states outside `labels` are fixed.
    pub fn embed(&self, labels: &[usize], n: usize) -> Permutation {
        assert_eq!(labels.len(), self.len());
        let mut images: Vec<usize> = (0..n).collect();
        for (a, &label) in labels.iter().enumerate() {
            images[label] = labels[self.images[a]];
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, s) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{s}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

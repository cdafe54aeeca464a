//! Simplicial operators in normal form.
//!
//! A word `s_{j1} .. s_{jk} d_{i1} .. d_{il}` acts on the left, so the
//! rightmost letter is applied first. Degeneracy indices are strictly
//! decreasing and face indices strictly increasing. Internally an operator
//! `X_n -> X_m` is the monotone map `[m] -> [n]` it is induced by.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WordError {
    #[error("face d_{index} does not exist in dimension {dim}")]
    FaceOutOfRange { index: usize, dim: usize },
    #[error("degeneracy s_{index} does not exist in dimension {dim}")]
    DegeneracyOutOfRange { index: usize, dim: usize },
    #[error("cannot compose: inner word lands in dimension {inner}, outer word starts in {outer}")]
    DimensionMismatch { inner: usize, outer: usize },
    #[error("face indices are not strictly increasing or degeneracy indices not strictly decreasing")]
    NotNormal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    Face(usize),
    Degeneracy(usize),
}

/// An operator from dimension `source` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OperatorWord {
    source: usize,
    degeneracies: Vec<usize>,
    faces: Vec<usize>,
}

impl OperatorWord {
    pub fn identity(dim: usize) -> Self {
        OperatorWord { source: dim, degeneracies: vec![], faces: vec![] }
    }

    pub fn face(dim: usize, i: usize) -> Result<Self, WordError> {
        if dim == 0 || i > dim {
            return Err(WordError::FaceOutOfRange { index: i, dim });
        }
        Ok(OperatorWord { source: dim, degeneracies: vec![], faces: vec![i] })
    }

    pub fn degeneracy(dim: usize, j: usize) -> Result<Self, WordError> {
        if j > dim {
            return Err(WordError::DegeneracyOutOfRange { index: j, dim });
        }
        Ok(OperatorWord { source: dim, degeneracies: vec![j], faces: vec![] })
    }

    /// Builds a word already in normal form, checking that it is one.
    pub fn from_normal(
        source: usize,
        degeneracies: Vec<usize>,
        faces: Vec<usize>,
    ) -> Result<Self, WordError> {
        if !faces.windows(2).all(|w| w[0] < w[1]) || !degeneracies.windows(2).all(|w| w[0] > w[1])
        {
            return Err(WordError::NotNormal);
        }
        let l = faces.len();
        if l > source {
            return Err(WordError::FaceOutOfRange { index: *faces.last().unwrap(), dim: source });
        }
        for (k, &i) in faces.iter().enumerate() {
            // d_{i_k} acts in dimension source - (l - 1 - k)
            let dim = source - (l - 1 - k);
            if i > dim {
                return Err(WordError::FaceOutOfRange { index: i, dim });
            }
        }
        let base = source - l;
        let k = degeneracies.len();
        for (t, &j) in degeneracies.iter().enumerate() {
            let dim = base + (k - 1 - t);
            if j > dim {
                return Err(WordError::DegeneracyOutOfRange { index: j, dim });
            }
        }
        Ok(OperatorWord { source, degeneracies, faces })
    }

    /// Normalizes an arbitrary sequence of letters acting on `source`,
    /// written left to right as they appear in the composite (rightmost acts first).
    pub fn from_letters(source: usize, letters: &[Letter]) -> Result<Self, WordError> {
        let mut w = OperatorWord::identity(source);
        for letter in letters.iter().rev() {
            let dim = w.target();
            let step = match *letter {
                Letter::Face(i) => OperatorWord::face(dim, i)?,
                Letter::Degeneracy(j) => OperatorWord::degeneracy(dim, j)?,
            };
            w = step.compose(&w)?;
        }
        Ok(w)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.source - self.faces.len() + self.degeneracies.len()
    }

    pub fn degeneracies(&self) -> &[usize] {
        &self.degeneracies
    }

    pub fn faces(&self) -> &[usize] {
        &self.faces
    }

    pub fn is_identity(&self) -> bool {
        self.faces.is_empty() && self.degeneracies.is_empty()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.degeneracies
            .iter()
            .map(|&j| Letter::Degeneracy(j))
            .chain(self.faces.iter().map(|&i| Letter::Face(i)))
            .collect()
    }

    /// The monotone map `[target] -> [source]`.
    pub fn monotone_map(&self) -> Vec<usize> {
        let mid = self.source - self.faces.len();
        // surjection [target] -> [mid]
        let m = self.target();
        let mut eps = Vec::with_capacity(m + 1);
        let mut cur = 0usize;
        for p in 0..=m {
            if p > 0 && !self.degeneracies.contains(&(p - 1)) {
                cur += 1;
            }
            eps.push(cur);
        }
        debug_assert_eq!(cur, mid);
        // injection [mid] -> [source] skipping the face indices
        let image: Vec<usize> = (0..=self.source).filter(|v| !self.faces.contains(v)).collect();
        eps.into_iter().map(|e| image[e]).collect()
    }

    /// Recovers the normal form from a monotone map `[m] -> [source]`.
    pub fn from_monotone_map(source: usize, map: &[usize]) -> Self {
        assert!(!map.is_empty());
        debug_assert!(map.windows(2).all(|w| w[0] <= w[1]) && *map.last().unwrap() <= source);
        let faces: Vec<usize> = (0..=source).filter(|v| !map.contains(v)).collect();
        let mut degeneracies: Vec<usize> =
            (0..map.len() - 1).filter(|&p| map[p] == map[p + 1]).collect();
        degeneracies.reverse();
        OperatorWord { source, degeneracies, faces }
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &OperatorWord) -> Result<OperatorWord, WordError> {
        if inner.target() != self.source {
            return Err(WordError::DimensionMismatch { inner: inner.target(), outer: self.source });
        }
        let outer_map = self.monotone_map();
        let inner_map = inner.monotone_map();
        let composite: Vec<usize> = outer_map.iter().map(|&p| inner_map[p]).collect();
        Ok(OperatorWord::from_monotone_map(inner.source, &composite))
    }

    /// Acts on a vertex sequence of length `source + 1`.
    pub fn act_on_sequence<T: Clone>(&self, seq: &[T]) -> Vec<T> {
        assert_eq!(seq.len(), self.source + 1);
        self.monotone_map().into_iter().map(|p| seq[p].clone()).collect()
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id_{}", self.source);
        }
        let parts: Vec<String> = self
            .letters()
            .into_iter()
            .map(|l| match l {
                Letter::Face(i) => format!("d{i}"),
                Letter::Degeneracy(j) => format!("s{j}"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

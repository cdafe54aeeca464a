use std::fmt;

use serde::{Deserialize, Serialize};

use crate::sset::OperatorWord;

use super::OutcomeError;

/// An outcome simplex, stored as its tuple of group elements.
pub type Outcome = Vec<u32>;

/// The measurement-outcome space a distribution takes values in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeSpace {
    /// Nerve of `Z_d`: n-simplices are n-tuples.
    Nerve(u32),
    /// The circle inside the nerve: the zero tuple and the unit vectors.
    Circle(u32),
    /// `Δ_{Z_d}`: n-simplices are (n+1)-tuples.
    Discrete(u32),
}

impl fmt::Display for OutcomeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeSpace::Nerve(d) => write!(f, "nerve({d})"),
            OutcomeSpace::Circle(d) => write!(f, "circle({d})"),
            OutcomeSpace::Discrete(d) => write!(f, "discrete({d})"),
        }
    }
}

impl std::str::FromStr for OutcomeSpace {
    type Err = OutcomeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || OutcomeError::Malformed(format!("unknown outcome space {s:?}"));
        let (name, rest) = s.trim().split_once('(').ok_or_else(err)?;
        let d: u32 = rest.strip_suffix(')').ok_or_else(err)?.trim().parse().map_err(|_| err())?;
        let space = match name.trim() {
            "nerve" => OutcomeSpace::Nerve(d),
            "circle" => OutcomeSpace::Circle(d),
            "discrete" => OutcomeSpace::Discrete(d),
            _ => return Err(err()),
        };
        space.check()?;
        Ok(space)
    }
}

impl OutcomeSpace {
    pub fn check(&self) -> Result<(), OutcomeError> {
        let d = self.modulus();
        let ok = match self {
            OutcomeSpace::Circle(_) => d >= 2,
            _ => d >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(OutcomeError::Malformed(format!("{self} needs a larger modulus")))
        }
    }

    pub fn modulus(&self) -> u32 {
        match *self {
            OutcomeSpace::Nerve(d) | OutcomeSpace::Circle(d) | OutcomeSpace::Discrete(d) => d,
        }
    }

    pub fn is_nerve_like(&self) -> bool {
        !matches!(self, OutcomeSpace::Discrete(_))
    }

    pub fn tuple_len(&self, dim: usize) -> usize {
        match self {
            OutcomeSpace::Discrete(_) => dim + 1,
            _ => dim,
        }
    }

    pub fn contains(&self, dim: usize, t: &[u32]) -> bool {
        let d = self.modulus();
        if t.len() != self.tuple_len(dim) || t.iter().any(|&a| a >= d) {
            return false;
        }
        match self {
            OutcomeSpace::Circle(_) => {
                let nonzero: Vec<u32> = t.iter().copied().filter(|&a| a != 0).collect();
                nonzero.is_empty() || nonzero == [1]
            }
            _ => true,
        }
    }

    /// Number of n-simplices, saturating.
    pub fn count(&self, dim: usize) -> u128 {
        match self {
            OutcomeSpace::Circle(_) => dim as u128 + 1,
            _ => (self.modulus() as u128).saturating_pow(self.tuple_len(dim) as u32),
        }
    }

    /// All n-simplices in lexicographic order.
    pub fn simplices(&self, dim: usize) -> Vec<Outcome> {
        match self {
            OutcomeSpace::Circle(_) => {
                let mut out = vec![vec![0; dim]];
                for k in (0..dim).rev() {
                    let mut t = vec![0; dim];
                    t[k] = 1;
                    out.push(t);
                }
                out
            }
            _ => {
                let len = self.tuple_len(dim);
                let d = self.modulus();
                let mut out = vec![];
                let mut t = vec![0u32; len];
                loop {
                    out.push(t.clone());
                    let mut k = len;
                    loop {
                        if k == 0 {
                            return out;
                        }
                        k -= 1;
                        t[k] += 1;
                        if t[k] < d {
                            break;
                        }
                        t[k] = 0;
                    }
                }
            }
        }
    }

    /// `d_i` on an n-simplex.
    pub fn face(&self, dim: usize, t: &[u32], i: usize) -> Outcome {
        debug_assert!(i <= dim && dim >= 1);
        let mut v = t.to_vec();
        match self {
            OutcomeSpace::Discrete(_) => {
                v.remove(i);
            }
            _ => {
                if i == 0 {
                    v.remove(0);
                } else if i == dim {
                    v.pop();
                } else {
                    let merged = (v[i - 1] + v[i]) % self.modulus();
                    v[i - 1] = merged;
                    v.remove(i);
                }
            }
        }
        v
    }

    /// `s_j` on an n-simplex.
    pub fn degeneracy(&self, _dim: usize, t: &[u32], j: usize) -> Outcome {
        let mut v = t.to_vec();
        match self {
            OutcomeSpace::Discrete(_) => {
                let x = v[j];
                v.insert(j, x);
            }
            _ => v.insert(j, 0),
        }
        v
    }

    pub fn apply(&self, t: &[u32], w: &OperatorWord) -> Outcome {
        let mut dim = w.source();
        let mut v = t.to_vec();
        for &i in w.faces().iter().rev() {
            v = self.face(dim, &v, i);
            dim -= 1;
        }
        for &j in w.degeneracies().iter().rev() {
            v = self.degeneracy(dim, &v, j);
            dim += 1;
        }
        v
    }

    /// Formats an outcome as a string key: digits when `d <= 10`, comma separated otherwise.
    pub fn format_outcome(&self, t: &[u32]) -> String {
        if self.modulus() <= 10 {
            t.iter().map(|a| a.to_string()).collect()
        } else {
            t.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    pub fn parse_outcome(&self, dim: usize, key: &str) -> Result<Outcome, OutcomeError> {
        let err = || OutcomeError::Malformed(format!("bad outcome {key:?} for a {dim}-simplex of {self}"));
        let t: Outcome = if key.contains(',') {
            key.split(',').map(|p| p.trim().parse::<u32>().map_err(|_| err())).collect::<Result<_, _>>()?
        } else {
            key.chars().map(|c| c.to_digit(10).ok_or_else(err)).collect::<Result<_, _>>()?
        };
        if !self.contains(dim, &t) {
            return Err(err());
        }
        Ok(t)
    }
}

/// A map of outcome spaces induced by `a -> mult * a` on tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OutcomeMap {
    pub from: OutcomeSpace,
    pub to: OutcomeSpace,
    pub mult: u32,
}

impl OutcomeMap {
    /// Checks that the map lands in `to` and commutes with faces and degeneracies.
    pub fn new(from: OutcomeSpace, to: OutcomeSpace, mult: u32) -> Result<Self, OutcomeError> {
        let bad = || OutcomeError::NotAMap(format!("{from} -> {to} by multiplication with {mult}"));
        if from.is_nerve_like() != to.is_nerve_like() {
            return Err(bad());
        }
        let m = OutcomeMap { from, to, mult };
        // well defined on Z_d and compatible with faces, checked through dimension 2
        for dim in 0..=2 {
            for t in from.simplices(dim) {
                let img = m.apply(&t);
                if !to.contains(dim, &img) {
                    return Err(bad());
                }
                for i in 0..=dim {
                    if dim >= 1 && to.face(dim, &img, i) != m.apply(&from.face(dim, &t, i)) {
                        return Err(bad());
                    }
                }
            }
        }
        if from.is_nerve_like() && (mult as u64 * from.modulus() as u64) % to.modulus() as u64 != 0 {
            return Err(bad());
        }
        Ok(m)
    }

    pub fn inclusion(from: OutcomeSpace, to: OutcomeSpace) -> Result<Self, OutcomeError> {
        Self::new(from, to, 1)
    }

    pub fn apply(&self, t: &[u32]) -> Outcome {
        let d = self.to.modulus() as u64;
        t.iter().map(|&a| ((a as u64 * self.mult as u64) % d) as u32).collect()
    }

    /// Injective on simplices up to the given dimension.
    pub fn is_injective(&self, max_dim: usize) -> bool {
        (0..=max_dim).all(|n| {
            let mut imgs: Vec<Outcome> = self.from.simplices(n).iter().map(|t| self.apply(t)).collect();
            let before = imgs.len();
            imgs.sort();
            imgs.dedup();
            imgs.len() == before
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::Letter;

    #[test]
    fn nerve_faces() {
        let y = OutcomeSpace::Nerve(2);
        assert_eq!(y.face(2, &[1, 1], 0), vec![1]);
        assert_eq!(y.face(2, &[1, 1], 1), vec![0]);
        assert_eq!(y.face(2, &[1, 0], 2), vec![1]);
        assert_eq!(y.degeneracy(1, &[1], 0), vec![0, 1]);
        assert_eq!(y.degeneracy(1, &[1], 1), vec![1, 0]);
        let y3 = OutcomeSpace::Nerve(3);
        assert_eq!(y3.face(3, &[1, 2, 2], 2), vec![1, 1]);
    }

    #[test]
    fn discrete_faces() {
        let y = OutcomeSpace::Discrete(2);
        assert_eq!(y.face(2, &[0, 1, 1], 1), vec![0, 1]);
        assert_eq!(y.degeneracy(1, &[0, 1], 1), vec![0, 1, 1]);
        assert_eq!(y.simplices(1).len(), 4);
    }

    #[test]
    fn circle_simplices() {
        let c = OutcomeSpace::Circle(2);
        assert_eq!(c.simplices(2), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        for t in c.simplices(3) {
            for i in 0..=3 {
                assert!(c.contains(2, &c.face(3, &t, i)));
            }
        }
    }

    #[test]
    fn words_act_consistently() {
        let y = OutcomeSpace::Nerve(3);
        let w = OperatorWord::from_letters(2, &[Letter::Degeneracy(1), Letter::Face(0)]).unwrap();
        assert_eq!(y.apply(&[2, 1], &w), vec![1, 0]);
        // d_0 s_0 is the identity
        let id = OperatorWord::from_letters(1, &[Letter::Face(0), Letter::Degeneracy(0)]).unwrap();
        assert_eq!(y.apply(&[2], &id), vec![2]);
    }

    #[test]
    fn outcome_maps() {
        let m = OutcomeMap::new(OutcomeSpace::Nerve(2), OutcomeSpace::Nerve(4), 2).unwrap();
        assert!(m.is_injective(2));
        assert!(OutcomeMap::new(OutcomeSpace::Nerve(3), OutcomeSpace::Nerve(2), 1).is_err());
        let c = OutcomeMap::new(OutcomeSpace::Nerve(2), OutcomeSpace::Nerve(1), 1).unwrap();
        assert!(!c.is_injective(1));
        assert!(OutcomeMap::inclusion(OutcomeSpace::Circle(2), OutcomeSpace::Nerve(2)).is_ok());
    }
}

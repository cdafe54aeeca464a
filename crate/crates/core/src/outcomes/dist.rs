use std::collections::BTreeMap;

use super::semiring::Semiring;
use super::space::Outcome;

/// A finitely supported distribution on outcome simplices; zero weights are not stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distribution<S> {
    weights: BTreeMap<Outcome, S>,
}

impl<S: Semiring> Default for Distribution<S> {
    fn default() -> Self {
        Distribution { weights: BTreeMap::new() }
    }
}

impl<S: Semiring> Distribution<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn delta(t: Outcome) -> Self {
        let mut d = Self::new();
        d.weights.insert(t, S::one());
        d
    }

    /// Sums duplicate outcomes and drops zeros.
    pub fn from_pairs<I: IntoIterator<Item = (Outcome, S)>>(pairs: I) -> Self {
        let mut d = Self::new();
        for (t, w) in pairs {
            d.add_weight(t, &w);
        }
        d
    }

    pub fn add_weight(&mut self, t: Outcome, w: &S) {
        if w.is_zero() {
            return;
        }
        let e = self.weights.entry(t).or_insert_with(S::zero);
        *e = e.add(w);
        // rings without cancellation never produce zero from a nonzero sum
    }

    pub fn get(&self, t: &[u32]) -> S {
        self.weights.get(t).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Outcome, &S)> {
        self.weights.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Outcome> {
        self.weights.keys()
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    pub fn contains(&self, t: &[u32]) -> bool {
        self.weights.contains_key(t)
    }

    pub fn total(&self) -> S {
        S::sum(self.weights.values())
    }

    pub fn is_normalized(&self) -> bool {
        self.total() == S::one()
    }

    /// Pushforward along an outcome function.
    pub fn pushforward(&self, f: impl Fn(&[u32]) -> Outcome) -> Self {
        Self::from_pairs(self.weights.iter().map(|(t, w)| (f(t), w.clone())))
    }

    pub fn map_values<T: Semiring>(&self, phi: impl Fn(&S) -> T) -> Distribution<T> {
        Distribution::from_pairs(self.weights.iter().map(|(t, w)| (t.clone(), phi(w))))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_pairs(self.weights.iter().map(|(t, w)| (t.clone(), w.mul(c))))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (t, w) in &other.weights {
            d.add_weight(t.clone(), w);
        }
        d
    }
}

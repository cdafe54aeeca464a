use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::word::{OperatorWord, WordError};
use super::SsetError;

pub const DEFAULT_MAX_DIM: usize = 3;

/// A nondegenerate simplex, addressed by dimension and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexId {
    pub dim: usize,
    pub id: usize,
}

impl SimplexId {
    pub fn new(dim: usize, id: usize) -> Self {
        SimplexId { dim, id }
    }
}

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dim, self.id)
    }
}

/// A possibly degenerate simplex `s_{j1} .. s_{jk} x` with `x` nondegenerate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexRef {
    pub base: SimplexId,
    /// Strictly decreasing degeneracy indices, empty when nondegenerate.
    pub degeneracies: Vec<usize>,
}

impl SimplexRef {
    pub fn nondeg(dim: usize, id: usize) -> Self {
        SimplexRef { base: SimplexId::new(dim, id), degeneracies: vec![] }
    }

    pub fn degenerate(base: SimplexId, degeneracies: Vec<usize>) -> Result<Self, WordError> {
        // validation happens through the word constructor
        OperatorWord::from_normal(base.dim, degeneracies.clone(), vec![])?;
        Ok(SimplexRef { base, degeneracies })
    }

    /// `s_{n-1} .. s_0 v`, the totally degenerate n-simplex on a vertex.
    pub fn totally_degenerate(vertex: usize, dim: usize) -> Self {
        SimplexRef { base: SimplexId::new(0, vertex), degeneracies: (0..dim).rev().collect() }
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.degeneracies.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degeneracies.is_empty()
    }

    pub fn degeneracy_word(&self) -> OperatorWord {
        OperatorWord::from_normal(self.base.dim, self.degeneracies.clone(), vec![])
            .expect("stored degeneracy word is normal")
    }

    /// Applies further degeneracies (a degeneracy-only word acting on this dimension).
    pub fn with_degeneracies(&self, outer: &OperatorWord) -> SimplexRef {
        debug_assert!(outer.faces().is_empty());
        let w = outer.compose(&self.degeneracy_word()).expect("dimensions match");
        SimplexRef { base: self.base, degeneracies: w.degeneracies().to_vec() }
    }
}

impl From<SimplexId> for SimplexRef {
    fn from(s: SimplexId) -> Self {
        SimplexRef { base: s, degeneracies: vec![] }
    }
}

/// A simplicial set given by its nondegenerate simplices and their faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedSSet {
    max_dim: usize,
    /// `labels[n][id]`
    labels: Vec<Vec<String>>,
    /// `faces[n][id][i]` for `n >= 1`; `faces[0]` is unused.
    faces: Vec<Vec<Vec<SimplexRef>>>,
    /// Named subspaces carried with builtins, as generating simplices.
    #[serde(default)]
    designations: BTreeMap<String, Vec<SimplexId>>,
}

impl PresentedSSet {
    pub fn empty(max_dim: usize) -> Self {
        PresentedSSet {
            max_dim,
            labels: vec![vec![]; max_dim + 1],
            faces: vec![vec![]; max_dim + 1],
            designations: BTreeMap::new(),
        }
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Highest dimension with a nondegenerate simplex, or 0 when there are none.
    pub fn top_dim(&self) -> usize {
        (0..=self.max_dim).rev().find(|&n| !self.labels[n].is_empty()).unwrap_or(0)
    }

    pub fn set_max_dim(&mut self, max_dim: usize) -> Result<(), SsetError> {
        if max_dim < self.top_dim() {
            return Err(SsetError::DimensionTooLarge { dim: self.top_dim(), max_dim });
        }
        self.labels.resize(max_dim + 1, vec![]);
        self.faces.resize(max_dim + 1, vec![]);
        self.max_dim = max_dim;
        Ok(())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.labels.get(dim).map_or(0, |l| l.len())
    }

    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.count(dim)).map(move |id| SimplexId::new(dim, id))
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = SimplexId> + '_ {
        (0..=self.max_dim).flat_map(move |n| self.simplices(n))
    }

    pub fn total_count(&self) -> usize {
        (0..=self.max_dim).map(|n| self.count(n)).sum()
    }

    pub fn contains(&self, s: SimplexId) -> bool {
        s.dim <= self.max_dim && s.id < self.count(s.dim)
    }

    pub fn label(&self, s: SimplexId) -> &str {
        &self.labels[s.dim][s.id]
    }

    pub fn set_label(&mut self, s: SimplexId, label: impl Into<String>) {
        self.labels[s.dim][s.id] = label.into();
    }

    pub fn find_label(&self, label: &str) -> Option<SimplexId> {
        self.all_simplices().find(|&s| self.label(s) == label)
    }

    pub fn designations(&self) -> &BTreeMap<String, Vec<SimplexId>> {
        &self.designations
    }

    pub fn designate(&mut self, name: impl Into<String>, generators: Vec<SimplexId>) {
        self.designations.insert(name.into(), generators);
    }

    pub fn designation(&self, name: &str) -> Option<&[SimplexId]> {
        self.designations.get(name).map(|v| v.as_slice())
    }

    /// Adds a vertex and returns its id.
    pub fn add_vertex(&mut self, label: impl Into<String>) -> SimplexId {
        self.labels[0].push(label.into());
        self.faces[0].push(vec![]);
        SimplexId::new(0, self.labels[0].len() - 1)
    }

    /// Adds a nondegenerate simplex of dimension `faces.len() - 1`.
    pub fn add_simplex(
        &mut self,
        label: impl Into<String>,
        faces: Vec<SimplexRef>,
    ) -> Result<SimplexId, SsetError> {
        let n = faces.len().checked_sub(1).ok_or(SsetError::EmptyFaceList)?;
        if n == 0 {
            return Err(SsetError::EmptyFaceList);
        }
        if n > self.max_dim {
            return Err(SsetError::DimensionTooLarge { dim: n, max_dim: self.max_dim });
        }
        for f in &faces {
            if f.dim() != n - 1 || !self.contains(f.base) {
                return Err(SsetError::UnknownFace { dim: n, face: f.clone() });
            }
        }
        self.labels[n].push(label.into());
        self.faces[n].push(faces);
        let s = SimplexId::new(n, self.labels[n].len() - 1);
        if let Err(e) = self.check_identities_at(s) {
            self.labels[n].pop();
            self.faces[n].pop();
            return Err(e);
        }
        Ok(s)
    }

    pub(crate) fn push_raw(&mut self, label: &str, faces: Vec<SimplexRef>) -> SimplexId {
        let n = faces.len() - 1;
        self.labels[n].push(label.to_string());
        self.faces[n].push(faces);
        SimplexId::new(n, self.labels[n].len() - 1)
    }

    /// The stored face `d_i` of a nondegenerate simplex.
    pub fn raw_face(&self, s: SimplexId, i: usize) -> &SimplexRef {
        &self.faces[s.dim][s.id][i]
    }

    pub fn raw_faces(&self, s: SimplexId) -> &[SimplexRef] {
        &self.faces[s.dim][s.id]
    }

    /// `d_i` of an arbitrary simplex reference.
    pub fn face(&self, r: &SimplexRef, i: usize) -> Result<SimplexRef, SsetError> {
        let n = r.dim();
        if n == 0 || i > n {
            return Err(WordError::FaceOutOfRange { index: i, dim: n }.into());
        }
        if !r.is_degenerate() {
            return Ok(self.raw_face(r.base, i).clone());
        }
        let w = OperatorWord::face(n, i)?.compose(&r.degeneracy_word())?;
        self.apply_normal(r.base, &w)
    }

    /// Applies a normal-form word to an arbitrary simplex reference.
    pub fn apply(&self, r: &SimplexRef, w: &OperatorWord) -> Result<SimplexRef, SsetError> {
        if w.source() != r.dim() {
            return Err(WordError::DimensionMismatch { inner: r.dim(), outer: w.source() }.into());
        }
        let full = w.compose(&r.degeneracy_word())?;
        self.apply_normal(r.base, &full)
    }

    fn apply_normal(&self, base: SimplexId, w: &OperatorWord) -> Result<SimplexRef, SsetError> {
        let mut cur = SimplexRef::from(base);
        for &i in w.faces().iter().rev() {
            cur = self.face(&cur, i)?;
        }
        let degs = OperatorWord::from_normal(cur.dim(), w.degeneracies().to_vec(), vec![])?;
        Ok(cur.with_degeneracies(&degs))
    }

    /// The vertices of a simplex in order, `v_k = (last-vertex operator)`.
    pub fn vertices(&self, r: &SimplexRef) -> Result<Vec<usize>, SsetError> {
        let n = r.dim();
        (0..=n)
            .map(|k| {
                let faces: Vec<usize> = (0..=n).filter(|&v| v != k).collect();
                let w = OperatorWord::from_normal(n, vec![], faces)?;
                Ok(self.apply(r, &w)?.base.id)
            })
            .collect()
    }

    /// The edge from vertex `a` to vertex `b` of a simplex (`a <= b`).
    pub fn edge(&self, r: &SimplexRef, a: usize, b: usize) -> Result<SimplexRef, SsetError> {
        let n = r.dim();
        let faces: Vec<usize> = (0..=n).filter(|&v| v != a && v != b).collect();
        let mut degs = vec![];
        if a == b {
            degs.push(0);
        }
        let w = OperatorWord::from_normal(n, degs, faces)?;
        self.apply(r, &w)
    }

    /// The spine edges `(0,1), (1,2), .., (n-1,n)` of a simplex.
    pub fn spine(&self, r: &SimplexRef) -> Result<Vec<SimplexRef>, SsetError> {
        (1..=r.dim()).map(|k| self.edge(r, k - 1, k)).collect()
    }

    fn check_identities_at(&self, s: SimplexId) -> Result<(), SsetError> {
        let n = s.dim;
        if n < 2 {
            return Ok(());
        }
        let r = SimplexRef::from(s);
        for j in 1..=n {
            for i in 0..j {
                // d_i d_j = d_{j-1} d_i
                let lhs = self.face(&self.face(&r, j)?, i)?;
                let rhs = self.face(&self.face(&r, i)?, j - 1)?;
                if lhs != rhs {
                    return Err(SsetError::IdentityViolated { simplex: s, i, j });
                }
            }
        }
        Ok(())
    }

    /// Checks every face identity and every face reference.
    pub fn validate(&self) -> Result<(), SsetError> {
        if self.labels.len() != self.max_dim + 1 || self.faces.len() != self.max_dim + 1 {
            return Err(SsetError::Malformed("dimension tables do not match max_dim".into()));
        }
        for n in 1..=self.max_dim {
            if self.faces[n].len() != self.labels[n].len() {
                return Err(SsetError::Malformed(format!("face table size in dimension {n}")));
            }
            for id in 0..self.count(n) {
                let fs = &self.faces[n][id];
                if fs.len() != n + 1 {
                    return Err(SsetError::Malformed(format!("simplex ({n}, {id}) has {} faces", fs.len())));
                }
                for f in fs {
                    if f.dim() != n - 1 || !self.contains(f.base) || f.base.dim >= n {
                        return Err(SsetError::UnknownFace { dim: n, face: f.clone() });
                    }
                    OperatorWord::from_normal(f.base.dim, f.degeneracies.clone(), vec![])?;
                }
            }
        }
        for n in 2..=self.max_dim {
            for s in self.simplices(n).collect::<Vec<_>>() {
                self.check_identities_at(s)?;
            }
        }
        for (name, gens) in &self.designations {
            if gens.iter().any(|g| !self.contains(*g)) {
                return Err(SsetError::Malformed(format!("designation {name} names a missing simplex")));
            }
        }
        Ok(())
    }

    /// Simplices that are not a face (through any chain) of another nondegenerate simplex.
    pub fn generating(&self) -> Vec<SimplexId> {
        let mut is_face: BTreeSet<SimplexId> = BTreeSet::new();
        for n in 1..=self.max_dim {
            for fs in &self.faces[n] {
                for f in fs {
                    is_face.insert(f.base);
                }
            }
        }
        self.all_simplices().filter(|s| !is_face.contains(s)).collect()
    }

    /// Nondegenerate simplices having `s` as the base of some face.
    pub fn cofaces(&self, s: SimplexId) -> Vec<(SimplexId, usize)> {
        let n = s.dim + 1;
        if n > self.max_dim {
            return vec![];
        }
        let mut out = vec![];
        for id in 0..self.count(n) {
            for (i, f) in self.faces[n][id].iter().enumerate() {
                if f.base == s && !f.is_degenerate() {
                    out.push((SimplexId::new(n, id), i));
                }
            }
        }
        out
    }

    /// Disjoint union; the ids of the k-th summand are shifted by the counts before it.
    pub fn disjoint_union(parts: &[&PresentedSSet]) -> PresentedSSet {
        let max_dim = parts.iter().map(|p| p.max_dim).max().unwrap_or(DEFAULT_MAX_DIM);
        let mut out = PresentedSSet::empty(max_dim);
        let mut offsets = vec![0usize; max_dim + 1];
        for p in parts {
            for n in 0..=p.max_dim {
                for id in 0..p.count(n) {
                    out.labels[n].push(p.labels[n][id].clone());
                    let fs = p.faces[n][id]
                        .iter()
                        .map(|f| SimplexRef {
                            base: SimplexId::new(f.base.dim, f.base.id + offsets[f.base.dim]),
                            degeneracies: f.degeneracies.clone(),
                        })
                        .collect();
                    out.faces[n].push(fs);
                }
            }
            for (name, gens) in &p.designations {
                let shifted = gens.iter().map(|g| SimplexId::new(g.dim, g.id + offsets[g.dim])).collect();
                out.designations.entry(name.clone()).or_insert(shifted);
            }
            for n in 0..=p.max_dim {
                offsets[n] += p.count(n);
            }
        }
        out
    }

    /// Builds the simplicial set of an ordered simplicial complex. Each facet is a
    /// set of vertex indices; simplices are their nonempty subsets in vertex order.
    pub fn from_ordered_complex(
        vertex_labels: &[&str],
        facets: &[Vec<usize>],
        max_dim: usize,
    ) -> Result<PresentedSSet, SsetError> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.iter().any(|&v| v >= vertex_labels.len()) {
                return Err(SsetError::Malformed(format!("facet {f:?} names a missing vertex")));
            }
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect();
                all.insert(sub);
            }
        }
        for v in 0..vertex_labels.len() {
            all.insert(vec![v]);
        }
        let top = all.iter().map(|s| s.len() - 1).max().unwrap_or(0);
        let mut out = PresentedSSet::empty(max_dim.max(top));
        let mut index: BTreeMap<Vec<usize>, SimplexId> = BTreeMap::new();
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![vec![]; top + 1];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        for (n, simplices) in by_dim.into_iter().enumerate() {
            for s in simplices {
                let label: String = s.iter().map(|&v| vertex_labels[v]).collect();
                let id = if n == 0 {
                    out.add_vertex(label)
                } else {
                    let faces = (0..=n)
                        .map(|i| {
                            let mut t = s.clone();
                            t.remove(i);
                            SimplexRef::from(index[&t])
                        })
                        .collect();
                    out.add_simplex(label, faces)?
                };
                index.insert(s, id);
            }
        }
        Ok(out)
    }

    /// SHA-256 of the canonical JSON form, used to tag cochains and classes.
    pub fn fingerprint(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("presentation serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PresentedSSet {
        PresentedSSet::from_ordered_complex(&["0", "1", "2"], &[vec![0, 1, 2]], 3).unwrap()
    }

    #[test]
    fn ordered_complex_counts() {
        let t = triangle();
        assert_eq!((t.count(0), t.count(1), t.count(2)), (3, 3, 1));
        t.validate().unwrap();
        let s = t.find_label("012").unwrap();
        assert_eq!(t.label(t.raw_face(s, 0).base), "12");
        assert_eq!(t.label(t.raw_face(s, 1).base), "02");
        assert_eq!(t.label(t.raw_face(s, 2).base), "01");
        assert_eq!(t.generating(), vec![s]);
    }

    #[test]
    fn degenerate_faces_follow_identities() {
        let t = triangle();
        let e = t.find_label("01").unwrap();
        // s_0 e has faces e, e, s_0 d_1 e
        let s0e = SimplexRef::degenerate(e, vec![0]).unwrap();
        assert_eq!(t.face(&s0e, 0).unwrap(), SimplexRef::from(e));
        assert_eq!(t.face(&s0e, 1).unwrap(), SimplexRef::from(e));
        let v0 = t.find_label("0").unwrap();
        assert_eq!(t.face(&s0e, 2).unwrap(), SimplexRef::degenerate(v0, vec![0]).unwrap());
        assert_eq!(t.vertices(&s0e).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn spine_of_triangle() {
        let t = triangle();
        let s = SimplexRef::from(t.find_label("012").unwrap());
        let spine: Vec<&str> = t.spine(&s).unwrap().iter().map(|r| t.label(r.base)).collect();
        assert_eq!(spine, vec!["01", "12"]);
    }

    #[test]
    fn inconsistent_faces_rejected() {
        let mut x = PresentedSSet::empty(2);
        let a = x.add_vertex("a");
        let b = x.add_vertex("b");
        let ab = x.add_simplex("ab", vec![b.into(), a.into()]).unwrap();
        let ba = x.add_simplex("ba", vec![a.into(), b.into()]).unwrap();
        // faces (ab, ab, ab) violate d_0 d_1 = d_0 d_0
        let bad = x.add_simplex("t", vec![ab.into(), ab.into(), ab.into()]);
        assert!(matches!(bad, Err(SsetError::IdentityViolated { .. })));
        // a consistent triangle a -> b -> a with long edge degenerate at a
        let aa = SimplexRef::degenerate(a, vec![0]).unwrap();
        x.add_simplex("t", vec![ba.into(), aa, ab.into()]).unwrap();
        x.validate().unwrap();
    }
}

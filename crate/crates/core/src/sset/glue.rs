//! Identifications of simplices and quotients by subspaces.

use std::collections::BTreeSet;

use super::map::SpaceMap;
use super::presented::{PresentedSSet, SimplexId, SimplexRef};
use super::subspace::Subspace;
use super::word::OperatorWord;
use super::SsetError;

/// The glued space together with the quotient map onto it.
#[derive(Clone, Debug)]
pub struct GlueResult {
    pub space: PresentedSSet,
    pub map: SpaceMap,
}

struct State<'a> {
    x: &'a PresentedSSet,
    parent: Vec<Vec<usize>>,
    collapsed: Vec<Vec<Option<SimplexRef>>>,
}

impl<'a> State<'a> {
    fn new(x: &'a PresentedSSet) -> Self {
        let parent = (0..=x.max_dim()).map(|n| (0..x.count(n)).collect()).collect();
        let collapsed = (0..=x.max_dim()).map(|n| vec![None; x.count(n)]).collect();
        State { x, parent, collapsed }
    }

    fn find(&mut self, s: SimplexId) -> SimplexId {
        let mut root = s.id;
        while self.parent[s.dim][root] != root {
            root = self.parent[s.dim][root];
        }
        let mut cur = s.id;
        while self.parent[s.dim][cur] != root {
            let next = self.parent[s.dim][cur];
            self.parent[s.dim][cur] = root;
            cur = next;
        }
        SimplexId::new(s.dim, root)
    }

    fn canon(&mut self, r: &SimplexRef) -> SimplexRef {
        let root = self.find(r.base);
        match self.collapsed[root.dim][root.id].clone() {
            Some(t) => self.canon(&t).with_degeneracies(&r.degeneracy_word()),
            None => SimplexRef { base: root, degeneracies: r.degeneracies.clone() },
        }
    }

    /// `d_i` of a canonical reference, canonicalized.
    fn face(&mut self, r: &SimplexRef, i: usize) -> Result<SimplexRef, SsetError> {
        if !r.is_degenerate() {
            let f = self.x.raw_face(r.base, i).clone();
            return Ok(self.canon(&f));
        }
        let w = OperatorWord::face(r.dim(), i)?.compose(&r.degeneracy_word())?;
        let degs = w.degeneracies().to_vec();
        let mut cur = SimplexRef::from(r.base);
        for &k in w.faces().iter().rev() {
            cur = self.face(&cur, k)?;
        }
        let outer = OperatorWord::from_normal(cur.dim(), degs, vec![])?;
        Ok(self.canon(&cur.with_degeneracies(&outer)))
    }

    fn faces(&mut self, r: &SimplexRef) -> Result<Vec<SimplexRef>, SsetError> {
        let n = r.dim();
        if n == 0 {
            return Ok(vec![]);
        }
        (0..=n).map(|i| self.face(r, i)).collect()
    }

    fn run(&mut self, pairs: &[(SimplexRef, SimplexRef)]) -> Result<(), SsetError> {
        let mut work: Vec<(SimplexRef, SimplexRef)> = pairs.iter().rev().cloned().collect();
        while let Some((a, b)) = work.pop() {
            let a = self.canon(&a);
            let b = self.canon(&b);
            if a == b {
                continue;
            }
            if a.dim() != b.dim() {
                return Err(SsetError::DimensionMismatch(a.dim(), b.dim()));
            }
            let fa = self.faces(&a)?;
            let fb = self.faces(&b)?;
            match (a.is_degenerate(), b.is_degenerate()) {
                (false, false) => {
                    let (keep, drop) =
                        if a.base.id < b.base.id { (a.base, b.base) } else { (b.base, a.base) };
                    self.parent[drop.dim][drop.id] = keep.id;
                }
                (false, true) => self.collapsed[a.base.dim][a.base.id] = Some(b.clone()),
                (true, false) => self.collapsed[b.base.dim][b.base.id] = Some(a.clone()),
                (true, true) => {
                    if a.degeneracies == b.degeneracies {
                        work.push((a.base.into(), b.base.into()));
                        continue;
                    }
                    return Err(SsetError::UnsupportedIdentification(a, b));
                }
            }
            for (x, y) in fa.into_iter().zip(fb).rev() {
                work.push((x, y));
            }
        }
        Ok(())
    }

    fn build(mut self) -> Result<GlueResult, SsetError> {
        let x = self.x;
        let max_dim = x.max_dim();
        let mut new_id: Vec<Vec<Option<usize>>> = vec![vec![]; max_dim + 1];
        let mut out = PresentedSSet::empty(max_dim);
        for n in 0..=max_dim {
            new_id[n] = vec![None; x.count(n)];
            for id in 0..x.count(n) {
                let s = SimplexId::new(n, id);
                let c = self.canon(&s.into());
                if c == SimplexRef::from(s) {
                    let fresh = if n == 0 {
                        out.add_vertex(x.label(s)).id
                    } else {
                        let faces = self
                            .faces(&c)?
                            .into_iter()
                            .map(|f| translate(&new_id, &f))
                            .collect();
                        // identities of the quotient are checked once at the end
                        push_unchecked(&mut out, x.label(s), faces)
                    };
                    new_id[n][id] = Some(fresh);
                }
            }
        }
        let mut images = vec![vec![]; max_dim + 1];
        for n in 0..=max_dim {
            for id in 0..x.count(n) {
                let s = SimplexId::new(n, id);
                let c = self.canon(&s.into());
                images[n].push(translate(&new_id, &c));
                // every member of a class must agree with its representative on faces
                if n > 0 && !c.is_degenerate() {
                    let mine: Vec<SimplexRef> = x
                        .raw_faces(s)
                        .to_vec()
                        .iter()
                        .map(|f| self.canon(f))
                        .collect();
                    if mine != self.faces(&c)? {
                        return Err(SsetError::Malformed(format!(
                            "identification left inconsistent faces at {s}"
                        )));
                    }
                }
            }
        }
        for (name, gens) in x.designations() {
            let mut mapped: BTreeSet<SimplexId> = BTreeSet::new();
            for g in gens {
                let r = &images[g.dim][g.id];
                if !r.is_degenerate() {
                    mapped.insert(r.base);
                }
            }
            out.designate(name.clone(), mapped.into_iter().collect());
        }
        out.validate()?;
        Ok(GlueResult { space: out, map: SpaceMap::new(images) })
    }
}

fn translate(new_id: &[Vec<Option<usize>>], r: &SimplexRef) -> SimplexRef {
    let id = new_id[r.base.dim][r.base.id].expect("representatives are numbered before use");
    SimplexRef { base: SimplexId::new(r.base.dim, id), degeneracies: r.degeneracies.clone() }
}

fn push_unchecked(out: &mut PresentedSSet, label: &str, faces: Vec<SimplexRef>) -> usize {
    out.push_raw(label, faces).id
}

/// Identifies each pair of simplices and closes under faces.
pub fn glue(x: &PresentedSSet, pairs: &[(SimplexRef, SimplexRef)]) -> Result<PresentedSSet, SsetError> {
    glue_with_map(x, pairs).map(|g| g.space)
}

pub fn glue_with_map(
    x: &PresentedSSet,
    pairs: &[(SimplexRef, SimplexRef)],
) -> Result<GlueResult, SsetError> {
    for (a, b) in pairs {
        for r in [a, b] {
            if !x.contains(r.base) {
                return Err(SsetError::UnknownFace { dim: r.dim(), face: r.clone() });
            }
        }
    }
    let mut st = State::new(x);
    st.run(pairs)?;
    st.build()
}

/// `X / Z`: every simplex of `Z` collapses onto a single basepoint labelled `*`.
pub fn quotient(x: &PresentedSSet, z: &Subspace) -> Result<PresentedSSet, SsetError> {
    quotient_with_map(x, z).map(|(g, _)| g.space)
}

/// Also returns the basepoint vertex of the quotient.
pub fn quotient_with_map(x: &PresentedSSet, z: &Subspace) -> Result<(GlueResult, SimplexId), SsetError> {
    z.check_in(x)?;
    if z.is_empty() {
        return Err(SsetError::EmptySubspace);
    }
    let mut y = x.clone();
    let star = y.add_vertex("*");
    let mut pairs = vec![];
    for s in z.iter() {
        let target = SimplexRef::totally_degenerate(star.id, s.dim);
        pairs.push((SimplexRef::from(s), target));
    }
    let mut g = glue_with_map(&y, &pairs)?;
    let star_image = g.map.image(star).base;
    g.space.set_label(star_image, "*");
    let mut images = g.map.into_images();
    images[0].pop();
    g.map = SpaceMap::new(images);
    Ok((g, star_image))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta(n: usize) -> PresentedSSet {
        let labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        PresentedSSet::from_ordered_complex(&refs, &[(0..=n).collect()], 3).unwrap()
    }

    #[test]
    fn circle_from_interval() {
        let d1 = delta(1);
        let a = d1.find_label("0").unwrap();
        let b = d1.find_label("1").unwrap();
        let c = glue(&d1, &[(a.into(), b.into())]).unwrap();
        assert_eq!((c.count(0), c.count(1)), (1, 1));
    }

    #[test]
    fn glued_triangle_edges() {
        let d2 = delta(2);
        let s = d2.find_label("012").unwrap();
        let g = glue(&d2, &[(d2.raw_face(s, 0).clone(), d2.raw_face(s, 1).clone())]).unwrap();
        assert_eq!((g.count(0), g.count(1), g.count(2)), (2, 2, 1));
        let t = g.simplices(2).next().unwrap();
        assert_eq!(g.raw_face(t, 0), g.raw_face(t, 1));
        assert_ne!(g.raw_face(t, 0), g.raw_face(t, 2));
    }

    #[test]
    fn collapsing_boundary_of_triangle() {
        let d2 = delta(2);
        let bd: Vec<SimplexId> = d2.simplices(1).collect();
        let z = Subspace::generated_by(&d2, &bd).unwrap();
        let q = quotient(&d2, &z).unwrap();
        assert_eq!((q.count(0), q.count(1), q.count(2)), (1, 0, 1));
        let t = q.simplices(2).next().unwrap();
        for i in 0..3 {
            assert_eq!(q.raw_face(t, i), &SimplexRef::totally_degenerate(0, 1));
        }
        assert_eq!(q.label(SimplexId::new(0, 0)), "*");
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let d2 = delta(2);
        let v = d2.find_label("0").unwrap();
        let e = d2.find_label("01").unwrap();
        assert!(matches!(glue(&d2, &[(v.into(), e.into())]), Err(SsetError::DimensionMismatch(0, 1))));
    }
}

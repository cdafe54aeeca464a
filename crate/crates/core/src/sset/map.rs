use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::presented::{PresentedSSet, SimplexId, SimplexRef};
use super::SsetError;

/// A simplicial map, given by the image of every nondegenerate simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceMap {
    images: Vec<Vec<SimplexRef>>,
}

impl SpaceMap {
    pub fn new(images: Vec<Vec<SimplexRef>>) -> Self {
        SpaceMap { images }
    }

    pub fn identity(x: &PresentedSSet) -> Self {
        SpaceMap {
            images: (0..=x.max_dim()).map(|n| x.simplices(n).map(SimplexRef::from).collect()).collect(),
        }
    }

    pub fn image(&self, s: SimplexId) -> &SimplexRef {
        &self.images[s.dim][s.id]
    }

    pub fn images(&self) -> &[Vec<SimplexRef>] {
        &self.images
    }

    pub fn into_images(self) -> Vec<Vec<SimplexRef>> {
        self.images
    }

    /// `f(s_J x) = s_J f(x)`.
    pub fn apply(&self, r: &SimplexRef) -> SimplexRef {
        self.image(r.base).with_degeneracies(&r.degeneracy_word())
    }

    /// Checks `d_i f(x) = f(d_i x)` on every nondegenerate simplex.
    pub fn validate(&self, source: &PresentedSSet, target: &PresentedSSet) -> Result<(), SsetError> {
        for n in 0..=source.max_dim() {
            if self.images.get(n).map_or(0, |v| v.len()) != source.count(n) {
                return Err(SsetError::Malformed(format!("map has wrong size in dimension {n}")));
            }
        }
        for s in source.all_simplices() {
            let img = self.image(s);
            if img.dim() != s.dim || !target.contains(img.base) {
                return Err(SsetError::NotSimplicial { simplex: s, face: 0 });
            }
            if s.dim == 0 {
                continue;
            }
            for i in 0..=s.dim {
                let lhs = target.face(img, i)?;
                let rhs = self.apply(source.raw_face(s, i));
                if lhs != rhs {
                    return Err(SsetError::NotSimplicial { simplex: s, face: i });
                }
            }
        }
        Ok(())
    }

    /// Injective on nondegenerate simplices and never collapses one.
    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.images.iter().flatten().all(|r| !r.is_degenerate() && seen.insert(r.base))
    }

    /// Nondegenerate preimage lookup for injective maps.
    pub fn preimages(&self) -> BTreeMap<SimplexId, SimplexId> {
        let mut out = BTreeMap::new();
        for (n, row) in self.images.iter().enumerate() {
            for (id, r) in row.iter().enumerate() {
                if !r.is_degenerate() {
                    out.insert(r.base, SimplexId::new(n, id));
                }
            }
        }
        out
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &SpaceMap) -> SpaceMap {
        SpaceMap {
            images: self.images.iter().map(|row| row.iter().map(|r| outer.apply(r)).collect()).collect(),
        }
    }

    /// A map sending each simplex with no coface to the equally labelled simplex
    /// of the target; every other simplex goes where its cofaces send it.
    pub fn by_labels(source: &PresentedSSet, target: &PresentedSSet) -> Result<SpaceMap, SsetError> {
        let mut images: Vec<Vec<Option<SimplexRef>>> =
            (0..=source.max_dim()).map(|n| vec![None; source.count(n)]).collect();
        for n in (0..=source.max_dim()).rev() {
            for s in source.simplices(n) {
                let via = source.cofaces(s).into_iter().find_map(|(c, i)| {
                    images[c.dim][c.id].as_ref().map(|img| target.face(img, i))
                });
                if let Some(r) = via {
                    images[n][s.id] = Some(r?);
                    continue;
                }
                match target.find_label(source.label(s)).filter(|t| t.dim == n) {
                    Some(t) => images[n][s.id] = Some(t.into()),
                    None => {
                        return Err(SsetError::Malformed(format!(
                            "no image for {:?} in the target",
                            source.label(s)
                        )))
                    }
                }
            }
        }
        let map = SpaceMap { images: images.into_iter().map(|r| r.into_iter().map(Option::unwrap).collect()).collect() };
        map.validate(source, target)?;
        Ok(map)
    }
}

/// Searches for an isomorphism `x -> y` of presentations.
pub fn find_isomorphism(x: &PresentedSSet, y: &PresentedSSet) -> Option<SpaceMap> {
    let top = x.max_dim().max(y.max_dim());
    if (0..=top).any(|n| x.count(n) != y.count(n)) {
        return None;
    }
    let mut order: Vec<SimplexId> = x.generating();
    order.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.id.cmp(&b.id)));
    let mut assign: Vec<Vec<Option<SimplexId>>> = (0..=top).map(|n| vec![None; x.count(n)]).collect();
    if search(x, y, &order, 0, &mut assign) {
        let images = (0..=x.max_dim())
            .map(|n| assign[n].iter().map(|s| SimplexRef::from(s.unwrap())).collect())
            .collect();
        Some(SpaceMap::new(images))
    } else {
        None
    }
}

fn search(
    x: &PresentedSSet,
    y: &PresentedSSet,
    order: &[SimplexId],
    k: usize,
    assign: &mut Vec<Vec<Option<SimplexId>>>,
) -> bool {
    if k == order.len() {
        // every simplex reached and the assignment is a bijection
        let mut used = BTreeSet::new();
        return assign.iter().flatten().all(|a| a.is_some_and(|t| used.insert(t)));
    }
    let s = order[k];
    if assign[s.dim][s.id].is_some() {
        return search(x, y, order, k + 1, assign);
    }
    for t in y.simplices(s.dim) {
        let saved = assign.clone();
        if propagate(x, y, s, t, assign) && search(x, y, order, k + 1, assign) {
            return true;
        }
        *assign = saved;
    }
    false
}

fn propagate(
    x: &PresentedSSet,
    y: &PresentedSSet,
    s: SimplexId,
    t: SimplexId,
    assign: &mut Vec<Vec<Option<SimplexId>>>,
) -> bool {
    match assign[s.dim][s.id] {
        Some(prev) => return prev == t,
        None => {
            if assign[s.dim].iter().any(|a| *a == Some(t)) {
                return false;
            }
            assign[s.dim][s.id] = Some(t);
        }
    }
    if s.dim == 0 {
        return true;
    }
    for i in 0..=s.dim {
        let fx = x.raw_face(s, i);
        let fy = y.raw_face(t, i);
        if fx.degeneracies != fy.degeneracies || !propagate(x, y, fx.base, fy.base, assign) {
            return false;
        }
    }
    true
}

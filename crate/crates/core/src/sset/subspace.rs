use std::collections::{BTreeMap, BTreeSet};

use super::map::SpaceMap;
use super::presented::{PresentedSSet, SimplexId, SimplexRef};
use super::SsetError;

/// A face-closed set of nondegenerate simplices of some ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    members: Vec<BTreeSet<usize>>,
}

impl Subspace {
    /// The smallest subspace containing the generators.
    pub fn generated_by(x: &PresentedSSet, generators: &[SimplexId]) -> Result<Self, SsetError> {
        let mut members = vec![BTreeSet::new(); x.max_dim() + 1];
        let mut stack: Vec<SimplexId> = generators.to_vec();
        while let Some(s) = stack.pop() {
            if !x.contains(s) {
                return Err(SsetError::Malformed(format!("generator {s} is not a simplex")));
            }
            if members[s.dim].insert(s.id) && s.dim > 0 {
                for f in x.raw_faces(s) {
                    stack.push(f.base);
                }
            }
        }
        Ok(Subspace { members })
    }

    /// A subspace from an explicit member list; rejects sets that are not face-closed.
    pub fn from_members(x: &PresentedSSet, members: &[SimplexId]) -> Result<Self, SsetError> {
        let mut sets = vec![BTreeSet::new(); x.max_dim() + 1];
        for s in members {
            if !x.contains(*s) {
                return Err(SsetError::Malformed(format!("{s} is not a simplex")));
            }
            sets[s.dim].insert(s.id);
        }
        let z = Subspace { members: sets };
        z.check_in(x)?;
        Ok(z)
    }

    pub fn full(x: &PresentedSSet) -> Self {
        Subspace { members: (0..=x.max_dim()).map(|n| (0..x.count(n)).collect()).collect() }
    }

    /// The subspace generated by a named designation of a builtin.
    pub fn designated(x: &PresentedSSet, name: &str) -> Result<Self, SsetError> {
        let gens = x
            .designation(name)
            .ok_or_else(|| SsetError::Malformed(format!("no subspace named {name:?}")))?
            .to_vec();
        Self::generated_by(x, &gens)
    }

    /// Subspace generated by simplices with the given labels.
    pub fn by_labels(x: &PresentedSSet, labels: &[&str]) -> Result<Self, SsetError> {
        let gens = labels
            .iter()
            .map(|l| x.find_label(l).ok_or_else(|| SsetError::Malformed(format!("no simplex labelled {l:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::generated_by(x, &gens)
    }

    pub fn check_in(&self, x: &PresentedSSet) -> Result<(), SsetError> {
        for s in self.iter() {
            if !x.contains(s) {
                return Err(SsetError::Malformed(format!("{s} is not a simplex of the ambient space")));
            }
            if s.dim > 0 {
                for f in x.raw_faces(s) {
                    if !self.contains(f.base) {
                        return Err(SsetError::NotFaceClosed(f.base));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, s: SimplexId) -> bool {
        self.members.get(s.dim).is_some_and(|m| m.contains(&s.id))
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(|m| m.is_empty())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.members.get(dim).map_or(0, |m| m.len())
    }

    pub fn iter(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.members
            .iter()
            .enumerate()
            .flat_map(|(n, m)| m.iter().map(move |&id| SimplexId::new(n, id)))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let n = self.members.len().max(other.members.len());
        let members = (0..n)
            .map(|d| match (self.members.get(d), other.members.get(d)) {
                (Some(a), Some(b)) => a.intersection(b).copied().collect(),
                _ => BTreeSet::new(),
            })
            .collect();
        Subspace { members }
    }

    pub fn union(&self, other: &Subspace) -> Subspace {
        let n = self.members.len().max(other.members.len());
        let members = (0..n)
            .map(|d| {
                let mut s = self.members.get(d).cloned().unwrap_or_default();
                if let Some(b) = other.members.get(d) {
                    s.extend(b.iter().copied());
                }
                s
            })
            .collect();
        Subspace { members }
    }

    /// The subspace as a space of its own, with the inclusion into `x`.
    /// Ids are renumbered in increasing ambient order; labels are kept.
    pub fn presentation(&self, x: &PresentedSSet) -> Result<(PresentedSSet, SpaceMap), SsetError> {
        self.check_in(x)?;
        let mut out = PresentedSSet::empty(x.max_dim());
        let mut local: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); x.max_dim() + 1];
        let mut images = vec![vec![]; x.max_dim() + 1];
        for s in self.iter() {
            let new = if s.dim == 0 {
                out.add_vertex(x.label(s))
            } else {
                let faces = x
                    .raw_faces(s)
                    .iter()
                    .map(|f| SimplexRef {
                        base: SimplexId::new(f.base.dim, local[f.base.dim][&f.base.id]),
                        degeneracies: f.degeneracies.clone(),
                    })
                    .collect();
                out.push_raw(x.label(s), faces)
            };
            local[s.dim].insert(s.id, new.id);
            images[s.dim].push(SimplexRef::from(s));
        }
        for (name, gens) in x.designations() {
            if gens.iter().all(|g| self.contains(*g)) {
                let mapped = gens.iter().map(|g| SimplexId::new(g.dim, local[g.dim][&g.id])).collect();
                out.designate(name.clone(), mapped);
            }
        }
        Ok((out, SpaceMap::new(images)))
    }
}

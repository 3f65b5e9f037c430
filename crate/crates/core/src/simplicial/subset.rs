use std::collections::HashMap;

use super::set::{FiniteSimplicialSet, Level, Tuples};
use super::simplex_ref::SimplexRef;
use crate::error::{Error, Result};

/// A pointed simplicial subset, stored as per-dimension membership flags
/// over the nondegenerate simplices of an ambient set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedSubset {
    members: Vec<Vec<bool>>,
}

impl PointedSubset {
    pub fn basepoint(ambient: &FiniteSimplicialSet) -> Self {
        let mut members = empty_flags(ambient);
        members[0][0] = true;
        PointedSubset { members }
    }

    pub fn full(ambient: &FiniteSimplicialSet) -> Self {
        let members = (0..=ambient.truncation())
            .map(|d| vec![true; ambient.count(d)])
            .collect();
        PointedSubset { members }
    }

    /// Subset of simplices satisfying `keep`; fails if the result is not
    /// closed under faces or misses the basepoint.
    pub fn from_predicate(
        ambient: &FiniteSimplicialSet,
        mut keep: impl FnMut(usize, u32) -> bool,
    ) -> Result<Self> {
        let members: Vec<Vec<bool>> = (0..=ambient.truncation())
            .map(|d| (0..ambient.count(d) as u32).map(|id| keep(d, id)).collect())
            .collect();
        let s = PointedSubset { members };
        s.validate(ambient)?;
        Ok(s)
    }

    /// Smallest pointed subset containing the given nondegenerate simplices.
    pub fn closure(
        ambient: &FiniteSimplicialSet,
        seeds: impl IntoIterator<Item = (usize, u32)>,
    ) -> Result<Self> {
        let mut members = empty_flags(ambient);
        members[0][0] = true;
        let mut stack = Vec::new();
        for (d, id) in seeds {
            if d > ambient.truncation() || id as usize >= ambient.count(d) {
                return Err(Error::UnknownSimplex { dim: d, id });
            }
            stack.push((d, id));
        }
        while let Some((d, id)) = stack.pop() {
            if members[d][id as usize] {
                continue;
            }
            members[d][id as usize] = true;
            if d > 0 {
                for f in ambient.stored_faces(d, id) {
                    if !members[f.base_dim()][f.base() as usize] {
                        stack.push((f.base_dim(), f.base()));
                    }
                }
            }
        }
        Ok(PointedSubset { members })
    }

    pub fn validate(&self, ambient: &FiniteSimplicialSet) -> Result<()> {
        if self.members.len() != ambient.truncation() + 1 {
            return Err(Error::InvalidSubset(format!(
                "subset has {} levels, ambient has {}",
                self.members.len(),
                ambient.truncation() + 1
            )));
        }
        for (d, flags) in self.members.iter().enumerate() {
            if flags.len() != ambient.count(d) {
                return Err(Error::InvalidSubset(format!("wrong simplex count in dimension {d}")));
            }
        }
        if !self.members[0][0] {
            return Err(Error::InvalidSubset("basepoint missing".into()));
        }
        for d in 1..self.members.len() {
            for (id, &m) in self.members[d].iter().enumerate() {
                if !m {
                    continue;
                }
                for f in ambient.stored_faces(d, id as u32) {
                    if !self.contains_ref(f) {
                        return Err(Error::InvalidSubset(format!(
                            "`{}` is a member but its face `{}` is not",
                            ambient.label(d, id as u32),
                            ambient.ref_string(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn truncation(&self) -> usize {
        self.members.len() - 1
    }

    pub fn contains(&self, dim: usize, id: u32) -> bool {
        self.members
            .get(dim)
            .and_then(|l| l.get(id as usize))
            .copied()
            .unwrap_or(false)
    }

    /// Membership of an arbitrary simplex: its nondegenerate base decides.
    pub fn contains_ref(&self, r: &SimplexRef) -> bool {
        self.contains(r.base_dim(), r.base())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.members.get(dim).map_or(0, |l| l.iter().filter(|&&m| m).count())
    }

    pub fn ids(&self, dim: usize) -> impl Iterator<Item = u32> + '_ {
        self.members[dim]
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i as u32)
    }

    pub fn union(&self, other: &PointedSubset) -> PointedSubset {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &PointedSubset) -> PointedSubset {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn is_subset_of(&self, other: &PointedSubset) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(a, b)| a.iter().zip(b).all(|(&x, &y)| !x || y))
    }

    fn zip_with(&self, other: &PointedSubset, f: impl Fn(bool, bool) -> bool) -> PointedSubset {
        assert_eq!(self.members.len(), other.members.len(), "subsets of different ambients");
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(a, b)| {
                assert_eq!(a.len(), b.len(), "subsets of different ambients");
                a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
            })
            .collect();
        PointedSubset { members }
    }

    /// The subset as a simplicial set in its own right, with `old_ids[d][new] = old`.
    pub fn to_simplicial_set(
        &self,
        ambient: &FiniteSimplicialSet,
    ) -> Result<(FiniteSimplicialSet, Vec<Vec<u32>>)> {
        self.validate(ambient)?;
        let t = ambient.truncation();
        let mut renumber: Vec<HashMap<u32, u32>> = vec![HashMap::new(); t + 1];
        let mut old_ids = vec![Vec::new(); t + 1];
        for d in 0..=t {
            for id in self.ids(d) {
                renumber[d].insert(id, old_ids[d].len() as u32);
                old_ids[d].push(id);
            }
        }
        let arity = ambient.tuple_arity();
        let mut levels = vec![Level::default(); t + 1];
        let mut tuple_levels = vec![Vec::new(); t + 1];
        for d in 0..=t {
            for &old in &old_ids[d] {
                levels[d].labels.push(ambient.label(d, old).to_string());
                if d == 0 {
                    let new = renumber[0][&old];
                    levels[0].faces.push(SimplexRef::nondegenerate(0, new));
                } else {
                    for f in ambient.stored_faces(d, old) {
                        let nb = renumber[f.base_dim()][&f.base()];
                        levels[d].faces.push(f.with_base(nb));
                    }
                }
                if let Some(tup) = ambient.tuple(d, old) {
                    tuple_levels[d].extend_from_slice(tup);
                }
            }
        }
        let tuples = arity.map(|arity| Tuples {
            arity,
            levels: tuple_levels,
        });
        Ok((FiniteSimplicialSet::from_levels(t, levels, tuples), old_ids))
    }
}

fn empty_flags(ambient: &FiniteSimplicialSet) -> Vec<Vec<bool>> {
    (0..=ambient.truncation())
        .map(|d| vec![false; ambient.count(d)])
        .collect()
}

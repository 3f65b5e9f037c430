//! Finite pointed simplicial sets and C₂-actions on them.

pub mod action;
pub mod fixtures;
pub mod format;
pub mod map;
pub mod product;
pub mod simplex_ref;
pub mod set;
pub mod subset;

pub use action::{find_section, orbit_space, section_map, Involution, OrbitSpace};
pub use map::SimplicialMap;
pub use product::{higher_diagonal, product, reduced_diagonal, smash, smash_power};
pub use set::{FiniteSimplicialSet, SimplicialSetBuilder};
pub use simplex_ref::SimplexRef;
pub use subset::PointedSubset;

use std::sync::Arc;

use crate::error::Result;

/// `Q/S` together with the projection `Q → Q/S`.
pub fn quotient(
    q: Arc<FiniteSimplicialSet>,
    s: &PointedSubset,
) -> Result<(Arc<FiniteSimplicialSet>, SimplicialMap)> {
    s.validate(&q)?;
    let t = q.truncation();
    let mut new_id: Vec<Vec<Option<u32>>> = Vec::with_capacity(t + 1);
    let mut kept: Vec<Vec<u32>> = Vec::with_capacity(t + 1);
    for d in 0..=t {
        let mut ids = vec![None; q.count(d)];
        let mut keep = Vec::new();
        if d == 0 {
            ids[0] = Some(0);
            keep.push(0);
        }
        for id in 0..q.count(d) as u32 {
            if !s.contains(d, id) {
                ids[id as usize] = Some(keep.len() as u32);
                keep.push(id);
            }
        }
        new_id.push(ids);
        kept.push(keep);
    }
    let redirect = |r: &SimplexRef| -> SimplexRef {
        match new_id[r.base_dim()][r.base() as usize] {
            Some(n) if !s.contains_ref(r) => r.with_base(n),
            _ => SimplexRef::degenerate_vertex(0, r.dim()),
        }
    };
    let mut levels = vec![set::Level::default(); t + 1];
    let mut tuple_levels = vec![Vec::new(); t + 1];
    for d in 0..=t {
        for &old in &kept[d] {
            levels[d].labels.push(if d == 0 && old == 0 {
                "*".to_string()
            } else {
                q.label(d, old).to_string()
            });
            if d == 0 {
                levels[0].faces.push(SimplexRef::nondegenerate(0, new_id[0][old as usize].unwrap()));
            } else {
                for f in q.stored_faces(d, old) {
                    levels[d].faces.push(redirect(f));
                }
            }
            if let Some(tup) = q.tuple(d, old) {
                tuple_levels[d].extend_from_slice(tup);
            }
        }
    }
    let tuples = q.tuple_arity().map(|arity| set::Tuples {
        arity,
        levels: tuple_levels,
    });
    let quot = Arc::new(FiniteSimplicialSet::from_levels(t, levels, tuples));
    let images = (0..=t)
        .map(|d| {
            (0..q.count(d) as u32)
                .map(|id| redirect(&SimplexRef::nondegenerate(d, id)))
                .collect()
        })
        .collect();
    let projection = SimplicialMap::new(q, quot.clone(), images)?;
    Ok((quot, projection))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_by_basepoint_and_everything() {
        let q = Arc::new(fixtures::sphere_two_disc(3));
        let (same, _) = quotient(q.clone(), &PointedSubset::basepoint(&q)).unwrap();
        assert_eq!(*same, *q);
        let (pt, proj) = quotient(q.clone(), &PointedSubset::full(&q)).unwrap();
        assert_eq!(*pt, FiniteSimplicialSet::point(3));
        assert!(proj.image_subset().unwrap() == PointedSubset::basepoint(&pt));
    }

    #[test]
    fn quotient_by_equator_is_a_wedge_of_spheres() {
        let q = Arc::new(fixtures::sphere_two_disc(3));
        let (w, _) = quotient(q.clone(), &fixtures::sphere_equator(&q)).unwrap();
        assert_eq!(w.count(1), 0);
        assert_eq!(w.count(2), 2);
        w.check_identities().unwrap();
    }
}

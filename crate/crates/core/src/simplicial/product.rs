//! Products and smash products.
//!
//! A nondegenerate `n`-simplex of `Q_1 × ... × Q_s` is a tuple
//! `(s_{J_1} x_1, ..., s_{J_s} x_s)` whose degeneracy sets have empty common
//! intersection. Only those tuples are enumerated; faces are taken
//! componentwise and the common degeneracies are then factored back out.

use std::collections::HashMap;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::set::{FiniteSimplicialSet, Level, Tuples};
use super::simplex_ref::{strip_positions, SimplexRef};
use crate::error::{Error, Result};

pub type TupleIndex = Vec<HashMap<Box<[SimplexRef]>, u32>>;

/// All simplices of `set` in ambient dimension `n`, optionally skipping
/// degeneracies of the basepoint.
pub(crate) fn component_universe(set: &FiniteSimplicialSet, n: usize, skip_basepoint: bool) -> Vec<SimplexRef> {
    set.all_simplices(n)
        .into_iter()
        .filter(|r| !(skip_basepoint && FiniteSimplicialSet::is_basepoint(r)))
        .collect()
}

#[inline]
fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        (1u64 << n) - 1
    }
}

/// Depth-first enumeration of jointly nondegenerate tuples.
///
/// `universes[k]` lists the candidates for component `k`; `cover[k]` is the
/// largest base dimension among them (how many degeneracy positions a single
/// component can clear).
pub(crate) fn for_each_nondegenerate_tuple(
    universes: &[Vec<SimplexRef>],
    n: usize,
    mut visit: impl FnMut(&[SimplexRef]),
) {
    let cover: Vec<usize> = universes
        .iter()
        .map(|u| u.iter().map(|r| r.base_dim()).max().unwrap_or(0))
        .collect();
    let mut suffix_cover = vec![0usize; universes.len() + 1];
    for k in (0..universes.len()).rev() {
        suffix_cover[k] = suffix_cover[k + 1] + cover[k];
    }
    let mut prefix = Vec::with_capacity(universes.len());
    fn rec(
        universes: &[Vec<SimplexRef>],
        suffix_cover: &[usize],
        prefix: &mut Vec<SimplexRef>,
        common: u64,
        visit: &mut dyn FnMut(&[SimplexRef]),
    ) {
        let k = prefix.len();
        if k == universes.len() {
            if common == 0 {
                visit(prefix);
            }
            return;
        }
        if common.count_ones() as usize > suffix_cover[k] {
            return;
        }
        for r in &universes[k] {
            prefix.push(*r);
            rec(universes, suffix_cover, prefix, common & r.degeneracies(), visit);
            prefix.pop();
        }
    }
    rec(universes, &suffix_cover, &mut prefix, full_mask(n), &mut visit);
}

/// Factors a componentwise face back into `(nondegenerate tuple, common degeneracies)`.
pub(crate) fn normalize_tuple(comps: &[SimplexRef], n: usize) -> (Vec<SimplexRef>, u64, usize) {
    let common = comps.iter().fold(full_mask(n), |acc, r| acc & r.degeneracies());
    let m = n - common.count_ones() as usize;
    let stripped = comps
        .iter()
        .map(|r| {
            SimplexRef::from_parts(r.base_dim(), r.base(), strip_positions(r.degeneracies(), common, n), m)
                .expect("stripping common degeneracies keeps the normal form")
        })
        .collect();
    (stripped, common, m)
}

fn tuple_label(factors: &[&FiniteSimplicialSet], comps: &[SimplexRef]) -> String {
    let parts: Vec<String> = factors
        .iter()
        .zip(comps)
        .map(|(f, r)| f.ref_string(r))
        .collect();
    format!("({})", parts.join(","))
}

/// Builds the product (`smash = false`) or smash product of the factors.
pub(crate) fn tuple_set(
    factors: &[&FiniteSimplicialSet],
    smash: bool,
    truncation: usize,
) -> Result<FiniteSimplicialSet> {
    for f in factors {
        if f.truncation() < truncation {
            return Err(Error::Truncation {
                requested: truncation,
                available: f.truncation(),
            });
        }
    }
    let arity = factors.len();
    let mut levels = vec![Level::default(); truncation + 1];
    let mut tuple_levels: Vec<Vec<SimplexRef>> = vec![Vec::new(); truncation + 1];
    let mut index: TupleIndex = vec![HashMap::new(); truncation + 1];

    for n in 0..=truncation {
        let universes: Vec<Vec<SimplexRef>> = factors
            .iter()
            .map(|f| component_universe(f, n, smash))
            .collect();
        let mut found: Vec<Vec<SimplexRef>> = Vec::new();
        if smash && n == 0 {
            found.push(vec![SimplexRef::nondegenerate(0, 0); arity]);
        }
        for_each_nondegenerate_tuple(&universes, n, |t| found.push(t.to_vec()));
        for comps in found {
            let id = levels[n].labels.len() as u32;
            let label = if smash && n == 0 && id == 0 {
                "*".to_string()
            } else {
                tuple_label(factors, &comps)
            };
            levels[n].labels.push(label);
            if n == 0 {
                levels[0].faces.push(SimplexRef::nondegenerate(0, id));
            } else {
                for i in 0..=n {
                    let face_comps: Vec<SimplexRef> =
                        factors.iter().zip(&comps).map(|(f, r)| f.face_unchecked(r, i)).collect();
                    let face = if smash && face_comps.iter().any(FiniteSimplicialSet::is_basepoint) {
                        SimplexRef::degenerate_vertex(0, n - 1)
                    } else {
                        let (base, common, m) = normalize_tuple(&face_comps, n - 1);
                        let fid = *index[m]
                            .get(base.as_slice())
                            .expect("faces of product simplices are enumerated first");
                        SimplexRef::from_parts(m, fid, common, n - 1).expect("valid face")
                    };
                    levels[n].faces.push(face);
                }
            }
            tuple_levels[n].extend_from_slice(&comps);
            index[n].insert(comps.into_boxed_slice(), id);
        }
    }
    Ok(FiniteSimplicialSet::from_levels(
        truncation,
        levels,
        Some(Tuples {
            arity,
            levels: tuple_levels,
        }),
    ))
}

/// Cartesian product, pointed at `(*, *)`.
pub fn product(q: &FiniteSimplicialSet, r: &FiniteSimplicialSet, truncation: usize) -> Result<FiniteSimplicialSet> {
    tuple_set(&[q, r], false, truncation)
}

/// `Q ∧ R`: the product with the wedge collapsed to the basepoint.
pub fn smash(q: &FiniteSimplicialSet, r: &FiniteSimplicialSet, truncation: usize) -> Result<FiniteSimplicialSet> {
    tuple_set(&[q, r], true, truncation)
}

/// The `s`-fold smash power `Q^{∧s}`; each simplex keeps its `s`-tuple.
pub fn smash_power(q: &FiniteSimplicialSet, s: usize, truncation: usize) -> Result<FiniteSimplicialSet> {
    if s == 0 {
        return Err(Error::EmptySmashPower);
    }
    let factors = vec![q; s];
    tuple_set(&factors, true, truncation)
}

/// Lookup table from component tuples to simplex ids, per dimension.
pub fn tuple_index(set: &FiniteSimplicialSet) -> Option<TupleIndex> {
    let t = set.tuples_raw()?;
    let mut index: TupleIndex = vec![HashMap::new(); set.truncation() + 1];
    for (n, level) in t.levels.iter().enumerate() {
        for (id, comps) in level.chunks(t.arity).enumerate() {
            index[n].insert(comps.to_vec().into_boxed_slice(), id as u32);
        }
    }
    Some(index)
}

/// The `k`-fold reduced diagonal `a ↦ a ∧ ... ∧ a` into a smash power of `a`.
pub fn higher_diagonal(
    source: Arc<FiniteSimplicialSet>,
    power: Arc<FiniteSimplicialSet>,
) -> Result<SimplicialMap> {
    let k = power
        .tuple_arity()
        .ok_or_else(|| Error::InvalidMap("diagonal target must be a smash power".into()))?;
    let index = tuple_index(&power).expect("smash powers carry tuples");
    let images = (0..=source.truncation())
        .map(|d| {
            (0..source.count(d) as u32)
                .map(|id| {
                    let x = SimplexRef::nondegenerate(d, id);
                    if FiniteSimplicialSet::is_basepoint(&x) {
                        return Ok(SimplexRef::degenerate_vertex(0, d));
                    }
                    let key = vec![x; k].into_boxed_slice();
                    index
                        .get(d)
                        .and_then(|m| m.get(&key))
                        .map(|&pid| SimplexRef::nondegenerate(d, pid))
                        .ok_or_else(|| Error::InvalidMap("diagonal tuple missing from target".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(source, power, images)
}

/// The reduced diagonal `A → A ∧ A`.
pub fn reduced_diagonal(
    source: Arc<FiniteSimplicialSet>,
    square: Arc<FiniteSimplicialSet>,
) -> Result<SimplicialMap> {
    if square.tuple_arity() != Some(2) {
        return Err(Error::InvalidMap("reduced diagonal needs a smash square as target".into()));
    }
    higher_diagonal(source, square)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::fixtures;

    fn counts(x: &FiniteSimplicialSet) -> Vec<usize> {
        (0..=x.truncation()).map(|d| x.count(d)).collect()
    }

    #[test]
    fn point_times_q_is_q() {
        let q = fixtures::sphere_two_disc(4);
        let p = FiniteSimplicialSet::point(4);
        assert_eq!(counts(&product(&p, &q, 4).unwrap()), counts(&q));
        assert_eq!(counts(&smash(&p, &q, 4).unwrap()), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn circle_squared_has_two_triangles() {
        let c = fixtures::circle(3);
        let cc = product(&c, &c, 3).unwrap();
        assert_eq!(counts(&cc), vec![1, 3, 2, 0]);
        cc.check_identities().unwrap();
        let sm = smash(&c, &c, 3).unwrap();
        assert_eq!(counts(&sm), vec![1, 1, 2, 0]);
        sm.check_identities().unwrap();
    }

    #[test]
    fn smash_power_of_one_is_the_set() {
        let q = fixtures::sphere_two_disc(4);
        let q1 = smash_power(&q, 1, 4).unwrap();
        assert_eq!(counts(&q1), counts(&q));
        for d in 1..=4 {
            for id in 0..q.count(d) as u32 {
                assert_eq!(q1.stored_faces(d, id), q.stored_faces(d, id));
            }
        }
        assert!(matches!(smash_power(&q, 0, 4), Err(Error::EmptySmashPower)));
    }

    #[test]
    fn product_count_matches_exhaustive_pairs() {
        // strip every pair of simplices in every dimension up to 4 and collect
        // the distinct nondegenerate tuples by their dimension
        let q = fixtures::sphere_two_disc(4);
        let r = fixtures::circle(4);
        let qr = product(&q, &r, 4).unwrap();
        let mut seen = vec![std::collections::HashSet::new(); 5];
        for n in 0..=4 {
            for a in q.all_simplices(n) {
                for b in r.all_simplices(n) {
                    let (base, _, m) = normalize_tuple(&[a, b], n);
                    seen[m].insert(base);
                }
            }
        }
        for n in 0..=4 {
            assert_eq!(qr.count(n), seen[n].len(), "dimension {n}");
        }
    }

    #[test]
    fn truncation_mismatch_rejected() {
        let q = fixtures::circle(2);
        let r = fixtures::circle(4);
        assert!(matches!(product(&q, &r, 3), Err(Error::Truncation { .. })));
    }
}

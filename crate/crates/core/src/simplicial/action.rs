//! C₂-actions: involutions, orbit spaces, fixed sets and sections of the
//! orbit projection.

use std::sync::Arc;

use super::map::SimplicialMap;
use super::set::{FiniteSimplicialSet, Level};
use super::simplex_ref::SimplexRef;
use super::subset::PointedSubset;
use crate::error::{Error, Result};

/// A simplicial involution `t` with `t² = 1`, given on nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    perm: Vec<Vec<u32>>,
}

impl Involution {
    pub fn new(x: &FiniteSimplicialSet, perm: Vec<Vec<u32>>) -> Result<Self> {
        if perm.len() != x.truncation() + 1 {
            return Err(Error::InvalidInvolution(format!(
                "permutation given for {} dimensions, set has {}",
                perm.len(),
                x.truncation() + 1
            )));
        }
        for (d, p) in perm.iter().enumerate() {
            if p.len() != x.count(d) {
                return Err(Error::InvalidInvolution(format!("wrong length in dimension {d}")));
            }
            for (i, &j) in p.iter().enumerate() {
                if j as usize >= p.len() {
                    return Err(Error::InvalidInvolution(format!("image out of range in dimension {d}")));
                }
                if p[j as usize] as usize != i {
                    return Err(Error::InvalidInvolution(format!(
                        "t² ≠ 1 on `{}`",
                        x.label(d, i as u32)
                    )));
                }
            }
        }
        let t = Involution { perm };
        for d in 1..=x.truncation() {
            for id in 0..x.count(d) as u32 {
                let tx = t.perm[d][id as usize];
                for i in 0..=d {
                    let lhs = x.stored_face(d, tx, i);
                    let rhs = t.apply(&x.stored_face(d, id, i));
                    if lhs != rhs {
                        return Err(Error::InvalidInvolution(format!(
                            "d{i} t({}) = {} but t(d{i} {}) = {}",
                            x.label(d, id),
                            x.ref_string(&lhs),
                            x.label(d, id),
                            x.ref_string(&rhs)
                        )));
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn identity(x: &FiniteSimplicialSet) -> Self {
        Involution {
            perm: (0..=x.truncation())
                .map(|d| (0..x.count(d) as u32).collect())
                .collect(),
        }
    }

    pub fn image(&self, dim: usize, id: u32) -> u32 {
        self.perm[dim][id as usize]
    }

    pub fn apply(&self, r: &SimplexRef) -> SimplexRef {
        r.with_base(self.perm[r.base_dim()][r.base() as usize])
    }

    pub fn is_fixed(&self, dim: usize, id: u32) -> bool {
        self.image(dim, id) == id
    }

    /// Whether the action fixes the basepoint.
    pub fn is_pointed(&self) -> bool {
        self.perm[0][0] == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.perm
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &j)| i as u32 == j))
    }

    pub(crate) fn raw(&self) -> &[Vec<u32>] {
        &self.perm
    }
}

/// The orbit space `X/G` with its projection and the image `A` of the fixed set.
#[derive(Clone, Debug)]
pub struct OrbitSpace {
    pub quotient: Arc<FiniteSimplicialSet>,
    pub projection: SimplicialMap,
    pub fixed: PointedSubset,
    /// `members[d][o]`: the simplices of `X` in orbit `o`, smallest id first.
    pub members: Vec<Vec<Vec<u32>>>,
}

pub fn orbit_space(x: Arc<FiniteSimplicialSet>, t: &Involution) -> Result<OrbitSpace> {
    if t.raw().len() != x.truncation() + 1 {
        return Err(Error::InvalidInvolution("involution does not match the set".into()));
    }
    let trunc = x.truncation();
    let mut orbit_of: Vec<Vec<u32>> = Vec::with_capacity(trunc + 1);
    let mut members: Vec<Vec<Vec<u32>>> = Vec::with_capacity(trunc + 1);
    for d in 0..=trunc {
        let mut of = vec![u32::MAX; x.count(d)];
        let mut mem: Vec<Vec<u32>> = Vec::new();
        for id in 0..x.count(d) as u32 {
            if of[id as usize] != u32::MAX {
                continue;
            }
            let o = mem.len() as u32;
            let partner = t.image(d, id);
            of[id as usize] = o;
            of[partner as usize] = o;
            if partner == id {
                mem.push(vec![id]);
            } else {
                mem.push(vec![id, partner]);
            }
        }
        orbit_of.push(of);
        members.push(mem);
    }

    let mut levels = vec![Level::default(); trunc + 1];
    for d in 0..=trunc {
        for orbit in &members[d] {
            let rep = orbit[0];
            levels[d].labels.push(x.label(d, rep).to_string());
            if d == 0 {
                let o = orbit_of[0][rep as usize];
                levels[0].faces.push(SimplexRef::nondegenerate(0, o));
            } else {
                for f in x.stored_faces(d, rep) {
                    levels[d]
                        .faces
                        .push(f.with_base(orbit_of[f.base_dim()][f.base() as usize]));
                }
            }
        }
    }
    let quotient = Arc::new(FiniteSimplicialSet::from_levels(trunc, levels, None));
    quotient.check_identities()?;

    let images = (0..=trunc)
        .map(|d| {
            orbit_of[d]
                .iter()
                .map(|&o| SimplexRef::nondegenerate(d, o))
                .collect()
        })
        .collect();
    let projection = SimplicialMap::new(x.clone(), quotient.clone(), images)?;

    let fixed = PointedSubset::from_predicate(&quotient, |d, o| {
        (d == 0 && o == 0) || members[d][o as usize].len() == 1
    })?;

    Ok(OrbitSpace {
        quotient,
        projection,
        fixed,
        members,
    })
}

/// Searches for `Y ⊆ X`, closed under faces, with `Y ∪ Yt = X` and
/// `Y ∩ Yt` the fixed set. Such a `Y` is exactly the image of a section of
/// the orbit projection.
///
/// Orbits are assigned dimension by dimension. Within a dimension the
/// choices are independent of each other, so forced orbits are settled first
/// and the search branches only on orbits where both members are admissible.
pub fn find_section(x: &FiniteSimplicialSet, t: &Involution) -> Option<PointedSubset> {
    let trunc = x.truncation();
    let mut in_y: Vec<Vec<bool>> = (0..=trunc)
        .map(|d| (0..x.count(d) as u32).map(|id| t.is_fixed(d, id)).collect())
        .collect();
    let mut free: Vec<Vec<(u32, u32)>> = vec![Vec::new(); trunc + 1];
    for (d, level) in free.iter_mut().enumerate() {
        for id in 0..x.count(d) as u32 {
            let p = t.image(d, id);
            if p > id {
                level.push((id, p));
            }
        }
    }
    if !search(x, &free, &mut in_y, 0) {
        return None;
    }
    PointedSubset::from_predicate(x, |d, id| in_y[d][id as usize]).ok()
}

fn admissible(x: &FiniteSimplicialSet, in_y: &[Vec<bool>], d: usize, id: u32) -> bool {
    d == 0
        || x
            .stored_faces(d, id)
            .iter()
            .all(|f| in_y[f.base_dim()][f.base() as usize])
}

fn search(x: &FiniteSimplicialSet, free: &[Vec<(u32, u32)>], in_y: &mut Vec<Vec<bool>>, d: usize) -> bool {
    if d == free.len() {
        return true;
    }
    let mut branching = Vec::new();
    let mut dead = false;
    for &(a, b) in &free[d] {
        match (admissible(x, in_y, d, a), admissible(x, in_y, d, b)) {
            (false, false) => {
                dead = true;
                break;
            }
            (true, false) => in_y[d][a as usize] = true,
            (false, true) => in_y[d][b as usize] = true,
            (true, true) => branching.push((a, b)),
        }
    }
    let ok = !dead && branch(x, free, in_y, d, &branching, 0);
    if !ok {
        for &(a, b) in &free[d] {
            in_y[d][a as usize] = false;
            in_y[d][b as usize] = false;
        }
    }
    ok
}

fn branch(
    x: &FiniteSimplicialSet,
    free: &[Vec<(u32, u32)>],
    in_y: &mut Vec<Vec<bool>>,
    d: usize,
    branching: &[(u32, u32)],
    k: usize,
) -> bool {
    if k == branching.len() {
        return search(x, free, in_y, d + 1);
    }
    let (a, b) = branching[k];
    for pick in [a, b] {
        in_y[d][pick as usize] = true;
        if branch(x, free, in_y, d, branching, k + 1) {
            return true;
        }
        in_y[d][pick as usize] = false;
    }
    false
}

/// The section `j: X/G → X` whose image is `y`.
pub fn section_map(x: Arc<FiniteSimplicialSet>, orbits: &OrbitSpace, y: &PointedSubset) -> Result<SimplicialMap> {
    let images = orbits
        .members
        .iter()
        .enumerate()
        .map(|(d, level)| {
            level
                .iter()
                .map(|orbit| {
                    let chosen: Vec<u32> = orbit.iter().copied().filter(|&id| y.contains(d, id)).collect();
                    match chosen.as_slice() {
                        [id] => Ok(SimplexRef::nondegenerate(d, *id)),
                        _ => Err(Error::InvalidMap(format!(
                            "section subset must meet each orbit once (dimension {d})"
                        ))),
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(orbits.quotient.clone(), x, images)
}

//! Small simplicial sets used throughout the tests and by the CLI.

use super::action::Involution;
use super::set::{FiniteSimplicialSet, SimplicialSetBuilder};
use super::simplex_ref::SimplexRef;
use super::subset::PointedSubset;

/// `S¹` with one vertex `*` and one edge `e`.
pub fn circle(truncation: usize) -> FiniteSimplicialSet {
    let mut b = SimplicialSetBuilder::new(truncation.max(1));
    let p = b.vertex("*").unwrap();
    b.simplex(1, "e", &[p, p]).unwrap();
    b.build().unwrap()
}

fn disc_faces() -> [SimplexRef; 3] {
    let e = SimplexRef::nondegenerate(1, 0);
    let s0 = SimplexRef::degenerate_vertex(0, 1);
    [e, s0, s0]
}

/// `S²` as two discs `g1`, `g2` glued along the circle `e`.
pub fn sphere_two_disc(truncation: usize) -> FiniteSimplicialSet {
    discs(truncation, &["g1", "g2"])
}

/// The equatorial circle `{*, e}` inside [`sphere_two_disc`].
pub fn sphere_equator(q: &FiniteSimplicialSet) -> PointedSubset {
    PointedSubset::closure(q, [(1, 0)]).unwrap()
}

fn discs(truncation: usize, names: &[&str]) -> FiniteSimplicialSet {
    let mut b = SimplicialSetBuilder::new(truncation.max(2));
    let p = b.vertex("*").unwrap();
    b.simplex(1, "e", &[p, p]).unwrap();
    for n in names {
        b.simplex(2, n, &disc_faces()).unwrap();
    }
    b.build().unwrap()
}

/// Four discs glued along their common boundary circle, with the
/// involution swapping `g1+ ↔ g1-` and `g2+ ↔ g2-`. The orbit space is
/// [`sphere_two_disc`] and the fixed set is the circle.
pub fn four_discs(truncation: usize) -> (FiniteSimplicialSet, Involution) {
    let x = discs(truncation, &["g1+", "g2+", "g1-", "g2-"]);
    let mut perm: Vec<Vec<u32>> = (0..=x.truncation())
        .map(|d| (0..x.count(d) as u32).collect())
        .collect();
    perm[2] = vec![2, 3, 0, 1];
    let t = Involution::new(&x, perm).unwrap();
    (x, t)
}

/// The boundary of a square `v0 → v1 → v2 → v3 → v0` with the free
/// rotation by two steps. Its orbit projection is a nontrivial double cover.
pub fn free_double_cover(truncation: usize) -> (FiniteSimplicialSet, Involution) {
    let mut b = SimplicialSetBuilder::new(truncation.max(1));
    let v: Vec<SimplexRef> = (0..4).map(|i| b.vertex(&format!("v{i}")).unwrap()).collect();
    for i in 0..4 {
        b.simplex(1, &format!("e{i}"), &[v[(i + 1) % 4], v[i]]).unwrap();
    }
    let x = b.build().unwrap();
    let mut perm: Vec<Vec<u32>> = (0..=x.truncation())
        .map(|d| (0..x.count(d) as u32).collect())
        .collect();
    perm[0] = vec![2, 3, 0, 1];
    perm[1] = vec![2, 3, 0, 1];
    let t = Involution::new(&x, perm).unwrap();
    (x, t)
}

/// The circle with the trivial action: orbit space and fixed set are both `S¹`.
pub fn trivial_circle(truncation: usize) -> (FiniteSimplicialSet, Involution) {
    let x = circle(truncation);
    let t = Involution::identity(&x);
    (x, t)
}

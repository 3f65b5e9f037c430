//! The pinched sets `Δ̃_s ⊆ Q^{∧s}`, the block-diagonal subsets `Δ̄^α`, and
//! the Mayer–Vietoris E¹ sum over the cover `Δ̃_s = ⋃_j Δ̄^{γ^{(j)}}`.
//!
//! Membership is decided on the tuple of components at ambient dimension:
//! a component lies in `A` when the base of its normal form does.

pub mod composition;

use std::sync::Arc;

pub use composition::{intersection_to_composition, Composition, CoverIndex};

use crate::error::{Error, Result};
use crate::homology::{
    is_homologous_zero, reduced_betti, subset_betti, BettiTable, CellKind, FactorTables, TupleComplex,
};
use crate::simplicial::product::{normalize_tuple, tuple_index};
use crate::simplicial::{reduced_diagonal, smash_power, FiniteSimplicialSet, PointedSubset, SimplexRef};

fn arity(q: &FiniteSimplicialSet, a: &PointedSubset, power: &FiniteSimplicialSet) -> Result<usize> {
    a.validate(q)?;
    let s = power
        .tuple_arity()
        .ok_or_else(|| Error::Precondition("expected a smash power carrying its tuples".into()))?;
    if power.truncation() > q.truncation() {
        return Err(Error::Truncation {
            requested: power.truncation(),
            available: q.truncation(),
        });
    }
    Ok(s)
}

fn pinched_tuple(a: &PointedSubset, comps: &[SimplexRef]) -> bool {
    comps.windows(2).any(|w| w[0] == w[1] && a.contains_ref(&w[0]))
}

fn blocks_tuple(a: &PointedSubset, alpha: &Composition, comps: &[SimplexRef]) -> bool {
    let mut start = 0;
    for &b in alpha.parts() {
        let block = &comps[start..start + b];
        if b >= 2 && !(a.contains_ref(&block[0]) && block.iter().all(|x| *x == block[0])) {
            return false;
        }
        start += b;
    }
    true
}

/// `Δ̃_s`: tuples with `x_i = x_{i+1} ∈ A` for some `i`. For `s ≤ 1` this is the basepoint.
pub fn pinched_set(q: &FiniteSimplicialSet, a: &PointedSubset, power: &FiniteSimplicialSet) -> Result<PointedSubset> {
    let is_point = power.count(0) == 1 && (1..=power.truncation()).all(|d| power.count(d) == 0);
    if power.tuple_arity().is_none() && is_point {
        a.validate(q)?;
        return Ok(PointedSubset::basepoint(power));
    }
    arity(q, a, power)?;
    PointedSubset::from_predicate(power, |d, id| {
        (d == 0 && id == 0) || pinched_tuple(a, power.tuple(d, id).expect("tuples present"))
    })
}

/// `Δ̄^α`: in each block of size at least two, all components are equal and in `A`.
pub fn delta_alpha(
    q: &FiniteSimplicialSet,
    a: &PointedSubset,
    power: &FiniteSimplicialSet,
    alpha: &Composition,
) -> Result<PointedSubset> {
    let s = arity(q, a, power)?;
    if alpha.is_empty() {
        return Err(Error::EmptyComposition);
    }
    if alpha.size() != s {
        return Err(Error::Precondition(format!("{alpha} is not a composition of {s}")));
    }
    PointedSubset::from_predicate(power, |d, id| {
        (d == 0 && id == 0) || blocks_tuple(a, alpha, power.tuple(d, id).expect("tuples present"))
    })
}

/// `Δ̄_I = ⋂_{j ∈ I} Δ̄^{γ^{(j)}}`, computed as an intersection of subsets.
pub fn cover_intersection(
    q: &FiniteSimplicialSet,
    a: &PointedSubset,
    power: &FiniteSimplicialSet,
    i: &CoverIndex,
) -> Result<PointedSubset> {
    let s = arity(q, a, power)?;
    if i.s() != s {
        return Err(Error::Precondition(format!("cover index for s = {} used with s = {s}", i.s())));
    }
    let mut acc = PointedSubset::full(power);
    for &j in i.members() {
        acc = acc.intersection(&delta_alpha(q, a, power, &Composition::gamma(j, s)?)?);
    }
    Ok(acc)
}

/// `Δ̃_s` as the union of the cover pieces `Δ̄^{γ^{(j)}}`, `1 ≤ j < s`.
pub fn pinched_union(q: &FiniteSimplicialSet, a: &PointedSubset, power: &FiniteSimplicialSet) -> Result<PointedSubset> {
    let s = arity(q, a, power)?;
    let mut acc = PointedSubset::basepoint(power);
    for j in 1..s {
        acc = acc.union(&delta_alpha(q, a, power, &Composition::gamma(j, s)?)?);
    }
    Ok(acc)
}

/// Closure of the diagonal tuples `(x, ..., x)`, `x ∈ A`: the image of the
/// iterated reduced diagonal of `A`.
pub fn diagonal_image(q: &FiniteSimplicialSet, a: &PointedSubset, power: &FiniteSimplicialSet) -> Result<PointedSubset> {
    let s = arity(q, a, power)?;
    let index = tuple_index(power).expect("tuples present");
    let mut seeds = Vec::new();
    for (d, level) in index.iter().enumerate().skip(1) {
        for id in a.ids(d) {
            let key = vec![SimplexRef::nondegenerate(d, id); s].into_boxed_slice();
            let pid = level
                .get(&key)
                .ok_or_else(|| Error::Precondition("diagonal tuple missing from the smash power".into()))?;
            seeds.push((d, *pid));
        }
    }
    PointedSubset::closure(power, seeds)
}

/// Builds `Δ̃_s` by the recursion `Δ̃_s = (Δ̃_{s-1} ∧ Q) ∪ (Q^{∧(s-2)} ∧ Δ̄(A))`,
/// starting from `Δ̃_2 = Δ̄(A)` and materializing every intermediate power.
pub fn pinched_inductive(
    q: &FiniteSimplicialSet,
    a: &PointedSubset,
    s: usize,
    truncation: usize,
) -> Result<(Arc<FiniteSimplicialSet>, PointedSubset)> {
    a.validate(q)?;
    if s == 0 {
        let p = Arc::new(FiniteSimplicialSet::point(truncation));
        let b = PointedSubset::basepoint(&p);
        return Ok((p, b));
    }
    let power = Arc::new(smash_power(q, s, truncation)?);
    if s == 1 {
        let b = PointedSubset::basepoint(&power);
        return Ok((power, b));
    }
    let square = if s == 2 { power.clone() } else { Arc::new(smash_power(q, 2, truncation)?) };
    let diag = diagonal_image(q, a, &square)?;
    if s == 2 {
        return Ok((power, diag));
    }
    let (prev_power, prev) = pinched_inductive(q, a, s - 1, truncation)?;
    let prev_index = tuple_index(&prev_power).expect("tuples present");
    let square_index = tuple_index(&square).expect("tuples present");
    let member = |set: &PointedSubset, index: &crate::simplicial::product::TupleIndex, comps: &[SimplexRef], n: usize| {
        let (base, _, m) = normalize_tuple(comps, n);
        index[m].get(base.as_slice()).is_some_and(|&id| set.contains(m, id))
    };
    let sub = PointedSubset::from_predicate(&power, |d, id| {
        if d == 0 && id == 0 {
            return true;
        }
        let comps = power.tuple(d, id).expect("tuples present");
        member(&prev, &prev_index, &comps[..s - 1], d) || member(&diag, &square_index, &comps[s - 2..], d)
    })?;
    Ok((power, sub))
}

/// Checks that the reduced diagonal `A → A ∧ A` is zero on mod-2 homology.
/// Homology of `A` vanishes above its top nondegenerate dimension, so the
/// check runs through that dimension (or as far as the truncation allows).
pub fn check_diagonal_hypothesis(q: &FiniteSimplicialSet, a: &PointedSubset) -> Result<()> {
    let (a_set, _) = a.to_simplicial_set(q)?;
    let top = (0..=a_set.truncation()).rev().find(|&d| a_set.count(d) > 0).unwrap_or(0);
    let trunc = (top + 1).min(a_set.truncation());
    if trunc == 0 {
        return Ok(());
    }
    let a_set = Arc::new(a_set.truncated(trunc)?);
    let square = Arc::new(smash_power(&a_set, 2, trunc)?);
    let diag = reduced_diagonal(a_set, square)?;
    if is_homologous_zero(&diag, trunc - 1)? {
        Ok(())
    } else {
        Err(Error::Precondition(
            "the reduced diagonal of A is not mod 2 homologous to zero, so the E¹ term need not collapse".into(),
        ))
    }
}

/// Betti table of `Δ̄^α ≅ A^{∧k} ∧ Q^{∧m}` by Künneth, where `k` counts
/// parts of α at least 2 and `m` parts equal to 1.
pub fn delta_alpha_betti_kunneth(bq: &BettiTable, ba: &BettiTable, alpha: &Composition) -> BettiTable {
    let (m, k) = alpha.shape();
    let max = bq.max_dim().min(ba.max_dim());
    let mut acc = BettiTable::sphere(0, max);
    for _ in 0..k {
        acc = acc.smash(ba);
    }
    for _ in 0..m {
        acc = acc.smash(bq);
    }
    acc
}

/// One E¹ term: cover index `I`, its composition, the degree `q = t - #I + 1`
/// and `b_q(Δ̄_I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Term {
    pub index: CoverIndex,
    pub composition: Composition,
    pub degree: usize,
    pub betti: u64,
}

/// The nonzero-degree E¹ terms contributing to total degree `t`.
pub fn mv_e1_terms(bq: &BettiTable, ba: &BettiTable, s: usize, t: usize) -> Result<Vec<E1Term>> {
    if s < 2 {
        return Err(Error::Precondition("the cover of Δ̃_s needs s ≥ 2".into()));
    }
    let mut out = Vec::new();
    for index in CoverIndex::all_nonempty(s) {
        let Some(degree) = (t + 1).checked_sub(index.len()) else {
            continue;
        };
        let composition = intersection_to_composition(&index);
        let table = delta_alpha_betti_kunneth(bq, ba, &composition);
        let betti = table.get(degree)?;
        out.push(E1Term {
            index,
            composition,
            degree,
            betti,
        });
    }
    Ok(out)
}

/// `Σ_{I ≠ ∅} b_{t-#I+1}(Δ̄_I)` from Betti tables of `Q` and `A`.
pub fn mv_e1_from_tables(bq: &BettiTable, ba: &BettiTable, s: usize, t: usize) -> Result<u64> {
    Ok(mv_e1_terms(bq, ba, s, t)?.iter().map(|e| e.betti).sum())
}

/// The E¹ sum for `b_t(Δ̃_s)`, after checking the reduced-diagonal hypothesis.
pub fn mv_e1_betti(q: &FiniteSimplicialSet, a: &PointedSubset, s: usize, t: usize) -> Result<u64> {
    check_diagonal_hypothesis(q, a)?;
    let bq = reduced_betti(q, t)?;
    let ba = subset_betti(q, a, t)?;
    mv_e1_from_tables(&bq, &ba, s, t)
}

/// `b_*(Δ̃_s)` through `max_dim` by direct homology of the implicit complex.
pub fn pinched_betti_brute(tables: &FactorTables, s: usize, max_dim: usize) -> Result<BettiTable> {
    if s <= 1 {
        return Ok(BettiTable::zero(max_dim));
    }
    TupleComplex::new(tables, s, CellKind::Pinched)?.betti(max_dim)
}

/// `b_*(Q^{∧s}/Δ̃_s)` through `max_dim` by direct homology of the implicit complex.
pub fn quotient_betti_brute(tables: &FactorTables, s: usize, max_dim: usize) -> Result<BettiTable> {
    if s == 0 {
        return Ok(BettiTable::zero(max_dim));
    }
    TupleComplex::new(tables, s, CellKind::SmashModPinched)?.betti(max_dim)
}

/// `b_*(Δ̄^α)` through `max_dim` by direct homology of the implicit complex.
pub fn delta_alpha_betti_brute(tables: &FactorTables, alpha: &Composition, max_dim: usize) -> Result<BettiTable> {
    if alpha.is_empty() {
        return Err(Error::EmptyComposition);
    }
    TupleComplex::new(tables, alpha.size(), CellKind::Blocks(alpha.parts().to_vec()))?.betti(max_dim)
}

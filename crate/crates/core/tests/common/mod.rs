#![allow(dead_code)]

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stunted_core::homology::{chain_complex, quotient_betti_via_les, reduced_betti, BettiTable};
use stunted_core::pinched::{
    cover_intersection, delta_alpha, intersection_to_composition, pinched_inductive, pinched_set, pinched_union,
    Composition, CoverIndex,
};
use stunted_core::simplicial::{
    fixtures, product, quotient, smash, smash_power, FiniteSimplicialSet, PointedSubset, SimplexRef,
    SimplicialSetBuilder,
};

pub type Check = Result<(), String>;

/// `S¹ ∨ S¹` with edges `a`, `b`.
pub fn wedge_of_circles(truncation: usize) -> FiniteSimplicialSet {
    let mut b = SimplicialSetBuilder::new(truncation.max(1));
    let p = b.vertex("*").unwrap();
    b.simplex(1, "a", &[p, p]).unwrap();
    b.simplex(1, "b", &[p, p]).unwrap();
    b.build().unwrap()
}

/// The circle `a` inside [`wedge_of_circles`].
pub fn wedge_first_circle(q: &FiniteSimplicialSet) -> PointedSubset {
    PointedSubset::closure(q, [(1, 0)]).unwrap()
}

/// Every fixture plus a few products and smashes, all at `truncation`.
pub fn pool(truncation: usize) -> Vec<(String, FiniteSimplicialSet)> {
    let c = fixtures::circle(truncation);
    let s2 = fixtures::sphere_two_disc(truncation);
    vec![
        ("circle".into(), c.clone()),
        ("sphere".into(), s2.clone()),
        ("four_discs".into(), fixtures::four_discs(truncation).0),
        ("free_double_cover".into(), fixtures::free_double_cover(truncation).0),
        ("wedge".into(), wedge_of_circles(truncation)),
        ("circle x circle".into(), product(&c, &c, truncation).unwrap()),
        ("sphere x circle".into(), product(&s2, &c, truncation).unwrap()),
        ("sphere ^ circle".into(), smash(&s2, &c, truncation).unwrap()),
        ("wedge ^ wedge".into(), smash_power(&wedge_of_circles(truncation), 2, truncation).unwrap()),
    ]
}

fn expect_eq(what: &str, lhs: SimplexRef, rhs: SimplexRef) -> Check {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what}: {lhs:?} != {rhs:?}"))
    }
}

/// Every simplicial identity that applies to `r` with indices `i`, `j`
/// (reduced into range). Needs `r.dim() + 2 ≤ truncation`.
pub fn identities_at(x: &FiniteSimplicialSet, r: &SimplexRef, i: usize, j: usize) -> Check {
    let n = r.dim();
    let e = |e: stunted_core::Error| e.to_string();
    let d = |r: &SimplexRef, i| x.face(r, i).map_err(e);
    let s = |r: &SimplexRef, j| x.degenerate(r, j).map_err(e);
    // normal form is unique
    if SimplexRef::from_parts(r.base_dim(), r.base(), r.degeneracies(), n) != Some(*r) {
        return Err(format!("{r:?} is not in normal form"));
    }
    if n >= 2 {
        let (i, j) = (i % n, 1 + j % n);
        let (i, j) = if i < j { (i, j) } else { (j - 1, i + 1) };
        expect_eq("d_i d_j = d_{j-1} d_i", d(&d(r, j)?, i)?, d(&d(r, i)?, j - 1)?)?;
    }
    {
        let (a, b) = (i % (n + 1), j % (n + 1));
        let (i, j) = (a.min(b), a.max(b));
        expect_eq("s_i s_j = s_{j+1} s_i", s(&s(r, j)?, i)?, s(&s(r, i)?, j + 1)?)?;
    }
    let j = j % (n + 1);
    let i = i % (n + 2);
    let lhs = d(&s(r, j)?, i)?;
    let rhs = if i < j {
        s(&d(r, i)?, j - 1)?
    } else if i == j || i == j + 1 {
        *r
    } else {
        s(&d(r, i - 1)?, j)?
    };
    expect_eq("d_i s_j", lhs, rhs)
}

/// Applies a random word of face and degeneracy operators, checking the
/// identities at every intermediate simplex.
pub fn random_word(x: &FiniteSimplicialSet, rng: &mut StdRng, len: usize) -> Check {
    let top = x.truncation() - 2;
    let n = rng.gen_range(0..=top);
    let all = x.all_simplices(n);
    let mut r = all[rng.gen_range(0..all.len())];
    for _ in 0..len {
        identities_at(x, &r, rng.gen_range(0..64), rng.gen_range(0..64))?;
        let up = r.dim() == 0 || (r.dim() < top && rng.gen_bool(0.5));
        r = if up {
            x.degenerate(&r, rng.gen_range(0..=r.dim())).map_err(|e| e.to_string())?
        } else {
            x.face(&r, rng.gen_range(0..=r.dim())).map_err(|e| e.to_string())?
        };
    }
    Ok(())
}

/// Closure of a few random nondegenerate simplices.
pub fn random_subset(q: &FiniteSimplicialSet, rng: &mut StdRng) -> PointedSubset {
    let mut seeds = Vec::new();
    for d in 0..=q.truncation() {
        for id in 0..q.count(d) as u32 {
            if rng.gen_bool(0.3) {
                seeds.push((d, id));
            }
        }
    }
    PointedSubset::closure(q, seeds).unwrap()
}

pub fn square_zero(name: &str, q: &FiniteSimplicialSet) -> Check {
    let cc = chain_complex(q, q.truncation() - 1).map_err(|e| format!("{name}: {e}"))?;
    cc.check_square_zero().map_err(|e| format!("{name}: {e}"))
}

/// `∂² = 0` on every pool member, on smash powers, on quotients by random
/// subsets, and on the random subsets themselves.
pub fn square_zero_everywhere(seed: u64) -> Check {
    let mut rng = StdRng::seed_from_u64(seed);
    for (name, q) in pool(4) {
        square_zero(&name, &q)?;
        let q = Arc::new(q);
        let s = random_subset(&q, &mut rng);
        let (w, _) = quotient(q.clone(), &s).map_err(|e| e.to_string())?;
        square_zero(&format!("{name} / random"), &w)?;
        let (sub, _) = s.to_simplicial_set(&q).map_err(|e| e.to_string())?;
        square_zero(&format!("random subset of {name}"), &sub)?;
    }
    for s in 1..=3 {
        square_zero(&format!("S2^{s}"), &smash_power(&fixtures::sphere_two_disc(5), s, 5).unwrap())?;
        square_zero(&format!("wedge^{s}"), &smash_power(&wedge_of_circles(4), s, 4).unwrap())?;
    }
    Ok(())
}

/// Betti numbers of `Q ∧ R` against the Künneth convolution.
pub fn kunneth(q: &FiniteSimplicialSet, r: &FiniteSimplicialSet, max_dim: usize) -> Check {
    let bq = reduced_betti(q, max_dim).map_err(|e| e.to_string())?;
    let br = reduced_betti(r, max_dim).map_err(|e| e.to_string())?;
    let qr = smash(q, r, max_dim + 1).map_err(|e| e.to_string())?;
    let direct = reduced_betti(&qr, max_dim).map_err(|e| e.to_string())?;
    if direct == bq.smash(&br) {
        Ok(())
    } else {
        Err(format!("direct {:?} vs Künneth {:?}", direct.values(), bq.smash(&br).values()))
    }
}

pub fn kunneth_on_fixtures() -> Check {
    let t = 5;
    let c = fixtures::circle(t);
    let s2 = fixtures::sphere_two_disc(t);
    let w = wedge_of_circles(t);
    let cc = product(&c, &c, t).unwrap();
    let sets = [&c, &s2, &w, &cc];
    for (i, q) in sets.iter().enumerate() {
        for r in &sets[i..] {
            kunneth(q, r, 4)?;
        }
    }
    Ok(())
}

/// LES rank bookkeeping against direct homology of the quotient, on
/// `count` random pairs.
pub fn les_random_pairs(seed: u64, count: usize) -> Check {
    let mut rng = StdRng::seed_from_u64(seed);
    let pool = pool(4);
    for k in 0..count {
        let (name, q) = &pool[rng.gen_range(0..pool.len())];
        let q = Arc::new(q.clone());
        let s = random_subset(&q, &mut rng);
        let les = quotient_betti_via_les(&q, &s, 3).map_err(|e| e.to_string())?;
        let (w, _) = quotient(q.clone(), &s).map_err(|e| e.to_string())?;
        let direct = reduced_betti(&w, 3).map_err(|e| e.to_string())?;
        if les != direct {
            return Err(format!(
                "pair {k} on {name}: LES {:?} vs direct {:?}",
                les.values(),
                direct.values()
            ));
        }
    }
    Ok(())
}

/// Compares `⋂_{j∈I} Δ̄^{γ^{(j)}}` with `Δ̄^{α(I)}` for every nonempty `I`,
/// over every simplex of the smash power through `truncation`. Also checks
/// that the compositions from `#I = p` are exactly those of dimension `s - p`.
pub fn intersections_are_blocks(q: &FiniteSimplicialSet, a: &PointedSubset, s: usize, truncation: usize) -> Check {
    let power = smash_power(q, s, truncation).map_err(|e| e.to_string())?;
    for i in CoverIndex::all_nonempty(s) {
        let alpha = intersection_to_composition(&i);
        let lhs = cover_intersection(q, a, &power, &i).map_err(|e| e.to_string())?;
        let rhs = delta_alpha(q, a, &power, &alpha).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("s = {s}, I = {:?}: intersection differs from Δ̄^{alpha}", i.members()));
        }
    }
    for p in 1..s {
        let mut from_i: Vec<Composition> = CoverIndex::all_nonempty(s)
            .iter()
            .filter(|i| i.len() == p)
            .map(intersection_to_composition)
            .collect();
        let mut want: Vec<Composition> = Composition::all_of(s).into_iter().filter(|c| c.dim() == s - p).collect();
        from_i.sort();
        want.sort();
        if from_i != want {
            return Err(format!("s = {s}, p = {p}: composition multisets differ"));
        }
    }
    Ok(())
}

/// Direct predicate, inductive construction and cover union give the same `Δ̃_s`.
pub fn three_constructions_agree(q: &FiniteSimplicialSet, a: &PointedSubset, s: usize, truncation: usize) -> Check {
    let (power, inductive) = pinched_inductive(q, a, s, truncation).map_err(|e| e.to_string())?;
    let direct = pinched_set(q, a, &power).map_err(|e| e.to_string())?;
    if inductive != direct {
        return Err(format!("s = {s}: inductive construction differs"));
    }
    if s >= 2 {
        let union = pinched_union(q, a, &power).map_err(|e| e.to_string())?;
        if union != direct {
            return Err(format!("s = {s}: cover union differs"));
        }
    }
    Ok(())
}

pub fn values(t: &BettiTable) -> Vec<u64> {
    t.values().to_vec()
}

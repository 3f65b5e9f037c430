use super::chain::{chain_complex, BettiTable, ChainComplexGF2};
use super::matrix::{xor_sorted, GF2SparseMatrix};
use crate::error::{Error, Result};
use crate::simplicial::{FiniteSimplicialSet, PointedSubset, SimplicialMap};

/// An echelon entry: `vec ≡ Σ_{k ∈ label} rep_k` modulo boundaries.
#[derive(Clone, Debug)]
struct Entry {
    vec: Vec<u32>,
    label: Vec<u32>,
}

/// Echelon form keyed by first nonzero row.
#[derive(Clone, Debug, Default)]
struct Echelon {
    by_pivot: std::collections::HashMap<u32, Entry>,
}

impl Echelon {
    /// Reduces `v`, returning the remainder and the accumulated label.
    fn reduce(&self, mut v: Vec<u32>) -> (Vec<u32>, Vec<u32>) {
        let mut label = Vec::new();
        while let Some(e) = v.first().and_then(|p| self.by_pivot.get(p)) {
            v = xor_sorted(&v, &e.vec);
            label = xor_sorted(&label, &e.label);
        }
        (v, label)
    }

    fn insert(&mut self, vec: Vec<u32>, label: Vec<u32>) {
        self.by_pivot.insert(vec[0], Entry { vec, label });
    }
}

/// Cycle representatives of homology in one degree, with the data needed to
/// express any cycle in terms of them.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub representatives: Vec<Vec<u32>>,
    echelon: Echelon,
}

impl DegreeBasis {
    /// Coordinates of a cycle modulo boundaries, as a sorted index list.
    pub fn coordinates(&self, cycle: Vec<u32>) -> Result<Vec<u32>> {
        let (rest, label) = self.echelon.reduce(cycle);
        if rest.is_empty() {
            Ok(label)
        } else {
            Err(Error::Precondition("chain is not a cycle".into()))
        }
    }
}

/// Explicit homology bases for degrees `0..=max_dim` of a chain complex.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degrees: Vec<DegreeBasis>,
}

/// Kernel of a matrix as a list of sorted column-index lists.
fn kernel(m: &GF2SparseMatrix) -> Vec<Vec<u32>> {
    let mut pivots: std::collections::HashMap<u32, (Vec<u32>, Vec<u32>)> = Default::default();
    let mut out = Vec::new();
    for j in 0..m.cols() {
        let mut c = m.column(j).to_vec();
        let mut v = vec![j as u32];
        while let Some((pc, pv)) = c.first().and_then(|p| pivots.get(p)) {
            c = xor_sorted(&c, pc);
            v = xor_sorted(&v, pv);
        }
        if c.is_empty() {
            out.push(v);
        } else {
            pivots.insert(c[0], (c, v));
        }
    }
    out
}

impl HomologyBasis {
    pub fn new(cc: &ChainComplexGF2) -> Self {
        let degrees = (0..=cc.max_dim())
            .map(|n| {
                let mut ech = Echelon::default();
                let bd = cc.boundary(n + 1);
                for j in 0..bd.cols() {
                    let (rest, _) = ech.reduce(bd.column(j).to_vec());
                    if !rest.is_empty() {
                        ech.insert(rest, Vec::new());
                    }
                }
                let mut reps = Vec::new();
                for z in kernel(cc.boundary(n)) {
                    let (rest, label) = ech.reduce(z.clone());
                    if !rest.is_empty() {
                        let k = reps.len() as u32;
                        reps.push(z);
                        ech.insert(rest, xor_sorted(&label, &[k]));
                    }
                }
                DegreeBasis {
                    representatives: reps,
                    echelon: ech,
                }
            })
            .collect();
        HomologyBasis { degrees }
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_values(self.degrees.iter().map(|d| d.representatives.len() as u64).collect())
    }
}

/// Matrices of `f_*` on homology in degrees `0..=max_dim`, in the bases
/// chosen by [`HomologyBasis::new`].
pub fn induced_map(f: &SimplicialMap, max_dim: usize) -> Result<Vec<GF2SparseMatrix>> {
    f.validate()?;
    let src = chain_complex(f.source(), max_dim)?;
    let tgt = chain_complex(f.target(), max_dim)?;
    let hs = HomologyBasis::new(&src);
    let ht = HomologyBasis::new(&tgt);
    (0..=max_dim)
        .map(|n| {
            let columns = hs.degrees[n]
                .representatives
                .iter()
                .map(|z| {
                    let mut image = Vec::new();
                    for &pos in z {
                        let id = src.basis(n)[pos as usize];
                        let r = f.image_of(n, id);
                        if let Some(p) = tgt.position_of(&r) {
                            image.push(p);
                        }
                    }
                    super::matrix::reduce_mod2(&mut image);
                    ht.degrees[n].coordinates(image)
                })
                .collect::<Result<Vec<_>>>()?;
            GF2SparseMatrix::new(ht.degrees[n].representatives.len(), columns)
        })
        .collect()
}

/// Whether `f` induces zero on reduced mod-2 homology through `max_dim`.
pub fn is_homologous_zero(f: &SimplicialMap, max_dim: usize) -> Result<bool> {
    Ok(induced_map(f, max_dim)?.iter().all(GF2SparseMatrix::is_zero))
}

/// Betti numbers of `Q/S` from the long exact sequence of `S → Q → Q/S`:
/// `b_n(Q/S) = (b_n(Q) - rank i_n) + (b_{n-1}(S) - rank i_{n-1})`.
pub fn quotient_betti_via_les(q: &std::sync::Arc<FiniteSimplicialSet>, s: &PointedSubset, max_dim: usize) -> Result<BettiTable> {
    let (_, inc) = SimplicialMap::inclusion(q.clone(), s)?;
    let maps = induced_map(&inc, max_dim)?;
    let ranks: Vec<u64> = maps.iter().map(|m| m.rank() as u64).collect();
    let values = (0..=max_dim)
        .map(|n| {
            let coker = maps[n].rows() as u64 - ranks[n];
            let ker = if n == 0 {
                0
            } else {
                maps[n - 1].cols() as u64 - ranks[n - 1]
            };
            coker + ker
        })
        .collect();
    Ok(BettiTable::from_values(values))
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::GF2SparseMatrix;
use crate::error::{Error, Result};
use crate::simplicial::{FiniteSimplicialSet, PointedSubset, SimplexRef};

/// Reduced mod-2 Betti numbers `b_0..=b_max`. Dimensions past `max_dim`
/// were not certified by the computation and are refused.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    max_dim: usize,
    values: Vec<u64>,
}

impl BettiTable {
    /// `values[n]` is `b_n`; the certified range is `0..values.len()`.
    pub fn from_values(values: Vec<u64>) -> Self {
        assert!(!values.is_empty(), "a Betti table certifies at least degree 0");
        BettiTable {
            max_dim: values.len() - 1,
            values,
        }
    }

    pub fn zero(max_dim: usize) -> Self {
        Self::from_values(vec![0; max_dim + 1])
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn get(&self, n: usize) -> Result<u64> {
        self.values.get(n).copied().ok_or(Error::OutsideCertifiedRange {
            dim: n,
            max: self.max_dim,
        })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Keeps degrees `0..=max_dim`.
    pub fn truncated(&self, max_dim: usize) -> Result<Self> {
        if max_dim > self.max_dim {
            return Err(Error::OutsideCertifiedRange {
                dim: max_dim,
                max: self.max_dim,
            });
        }
        Ok(Self::from_values(self.values[..=max_dim].to_vec()))
    }

    /// Künneth over a field: `b_n(X ∧ Y) = Σ_{p+q=n} b_p(X) b_q(Y)`.
    pub fn smash(&self, other: &BettiTable) -> BettiTable {
        let max = self.max_dim.min(other.max_dim);
        let values = (0..=max)
            .map(|n| (0..=n).map(|p| self.values[p] * other.values[n - p]).sum())
            .collect();
        BettiTable::from_values(values)
    }

    /// Reduced Betti numbers of `S^dim`; `S^0` is the unit for [`BettiTable::smash`].
    pub fn sphere(dim: usize, max_dim: usize) -> BettiTable {
        let mut values = vec![0; max_dim + 1];
        if dim <= max_dim {
            values[dim] = 1;
        }
        BettiTable::from_values(values)
    }

    /// Degrees with nonzero Betti number.
    pub fn support(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.values.iter().copied().enumerate().filter(|&(_, b)| b != 0)
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, b) in self.values.iter().enumerate() {
            writeln!(f, "b{n} = {b}")?;
        }
        Ok(())
    }
}

/// Normalized reduced chains of a finite pointed simplicial set over GF(2).
#[derive(Clone, Debug)]
pub struct ChainComplexGF2 {
    max_dim: usize,
    /// Nondegenerate simplex ids forming the basis, per dimension `0..=max_dim + 1`.
    basis: Vec<Vec<u32>>,
    /// `boundaries[n]` is `∂_n : C_n → C_{n-1}`.
    boundaries: Vec<GF2SparseMatrix>,
}

impl ChainComplexGF2 {
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn basis(&self, n: usize) -> &[u32] {
        &self.basis[n]
    }

    pub fn rank_c(&self, n: usize) -> usize {
        self.basis[n].len()
    }

    /// Position of a nondegenerate simplex in the basis, if it is a basis element.
    pub fn position(&self, n: usize, id: u32) -> Option<u32> {
        if n == 0 {
            id.checked_sub(1)
        } else {
            Some(id)
        }
    }

    /// Basis position of any simplex, `None` when it is degenerate or the basepoint.
    pub fn position_of(&self, r: &SimplexRef) -> Option<u32> {
        if r.is_degenerate() || FiniteSimplicialSet::is_basepoint(r) {
            None
        } else {
            self.position(r.dim(), r.base())
        }
    }

    pub fn boundary(&self, n: usize) -> &GF2SparseMatrix {
        &self.boundaries[n]
    }

    pub fn betti(&self) -> BettiTable {
        let ranks: Vec<usize> = self.boundaries.iter().map(GF2SparseMatrix::rank).collect();
        let values = (0..=self.max_dim)
            .map(|n| (self.basis[n].len() - ranks[n] - ranks[n + 1]) as u64)
            .collect();
        BettiTable::from_values(values)
    }

    /// `∂_{n-1} ∘ ∂_n = 0` in every stored degree.
    pub fn check_square_zero(&self) -> Result<()> {
        for n in 1..self.boundaries.len() {
            let sq = self.boundaries[n - 1].mul(&self.boundaries[n])?;
            if !sq.is_zero() {
                return Err(Error::Precondition(format!("∂∂ ≠ 0 in degree {n}")));
            }
        }
        Ok(())
    }
}

/// Normalized reduced chains through degree `max_dim`, with `∂_{max_dim+1}`.
pub fn chain_complex(q: &FiniteSimplicialSet, max_dim: usize) -> Result<ChainComplexGF2> {
    if max_dim + 1 > q.truncation() {
        return Err(Error::Truncation {
            requested: max_dim + 1,
            available: q.truncation(),
        });
    }
    let top = max_dim + 1;
    let basis: Vec<Vec<u32>> = (0..=top)
        .map(|n| {
            let start = if n == 0 { 1 } else { 0 };
            (start..q.count(n) as u32).collect()
        })
        .collect();
    let mut boundaries = vec![GF2SparseMatrix::zero(0, basis[0].len())];
    for n in 1..=top {
        let columns = basis[n]
            .iter()
            .map(|&id| {
                q.stored_faces(n, id)
                    .iter()
                    .filter(|f| !f.is_degenerate() && !FiniteSimplicialSet::is_basepoint(f))
                    .map(|f| if n == 1 { f.base() - 1 } else { f.base() })
                    .collect()
            })
            .collect();
        boundaries.push(GF2SparseMatrix::from_entries(basis[n - 1].len(), columns)?);
    }
    let cc = ChainComplexGF2 {
        max_dim,
        basis,
        boundaries,
    };
    cc.check_square_zero()?;
    Ok(cc)
}

pub fn reduced_betti(q: &FiniteSimplicialSet, max_dim: usize) -> Result<BettiTable> {
    Ok(chain_complex(q, max_dim)?.betti())
}

/// Betti numbers of a pointed subset, computed on its own simplicial set.
pub fn subset_betti(ambient: &FiniteSimplicialSet, s: &PointedSubset, max_dim: usize) -> Result<BettiTable> {
    let (sub, _) = s.to_simplicial_set(ambient)?;
    reduced_betti(&sub, max_dim)
}

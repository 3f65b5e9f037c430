//! Canonical references to (possibly degenerate) simplices.
//!
//! Every simplex of a simplicial set factors uniquely as `s_{j_k} ... s_{j_1} b`
//! with `b` nondegenerate and `j_1 < ... < j_k`. The word is stored as the bit
//! set `J = {j_1, ..., j_k}` inside `0..n`, where `n` is the ambient dimension.
//! Equivalently, bit `i` is set exactly when the collapse `[n] -> [p]` sends
//! `i` and `i + 1` to the same vertex.

use std::fmt;

/// Largest ambient dimension a [`SimplexRef`] can carry.
pub const MAX_DIM: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    dim: u16,
    base_dim: u16,
    base: u32,
    degeneracies: u64,
}

#[inline]
fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

impl SimplexRef {
    /// The nondegenerate simplex `id` of dimension `dim`.
    pub fn nondegenerate(dim: usize, id: u32) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        SimplexRef {
            dim: dim as u16,
            base_dim: dim as u16,
            base: id,
            degeneracies: 0,
        }
    }

    /// Builds a reference from its normal form. Returns `None` when the
    /// degeneracy set is not a subset of `0..dim` of size `dim - base_dim`.
    pub fn from_parts(base_dim: usize, base: u32, degeneracies: u64, dim: usize) -> Option<Self> {
        if dim > MAX_DIM || base_dim > dim {
            return None;
        }
        if degeneracies & !low_bits(dim) != 0 {
            return None;
        }
        if degeneracies.count_ones() as usize != dim - base_dim {
            return None;
        }
        Some(SimplexRef {
            dim: dim as u16,
            base_dim: base_dim as u16,
            base,
            degeneracies,
        })
    }

    /// `s_0^n` applied to vertex `id`.
    pub fn degenerate_vertex(id: u32, dim: usize) -> Self {
        SimplexRef::from_parts(0, id, low_bits(dim), dim).expect("valid vertex degeneracy")
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim as usize
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn degeneracies(&self) -> u64 {
        self.degeneracies
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracies != 0
    }

    /// Degeneracy indices in increasing order (`j_1 < ... < j_k`).
    pub fn word(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.degeneracies >> j & 1 == 1).collect()
    }

    /// The collapse `[n] -> [p]` as an explicit vertex map.
    pub fn collapse(&self) -> Vec<usize> {
        collapse_of(self.degeneracies, self.dim())
    }

    /// Replaces the base with another nondegenerate simplex of the same dimension.
    pub(crate) fn with_base(&self, base: u32) -> Self {
        SimplexRef { base, ..*self }
    }

    /// `s_j` applied to this simplex, in normal form.
    ///
    /// Panics if `j > dim`.
    pub fn degenerate(&self, j: usize) -> Self {
        let n = self.dim();
        assert!(j <= n, "degeneracy index {j} out of range for dimension {n}");
        assert!(n < MAX_DIM, "dimension overflow");
        SimplexRef {
            dim: self.dim + 1,
            base_dim: self.base_dim,
            base: self.base,
            degeneracies: insert_repeat(self.degeneracies, j),
        }
    }

    /// Outcome of `d_i` on the degeneracy word alone.
    ///
    /// Either `d_i` is absorbed by a degeneracy (the base survives), or it
    /// passes through to the face `d_m` of the base, after which the
    /// remaining degeneracies given by the returned mask must be reapplied.
    pub fn face_step(&self, i: usize) -> FaceStep {
        let n = self.dim();
        assert!(n >= 1 && i <= n, "face index {i} out of range for dimension {n}");
        let j = self.degeneracies;
        let absorbed = (i > 0 && j >> (i - 1) & 1 == 1) || (i < n && j >> i & 1 == 1);
        let rest = delete_position(j, i, n);
        if absorbed {
            FaceStep::Absorbed(SimplexRef {
                dim: self.dim - 1,
                base_dim: self.base_dim,
                base: self.base,
                degeneracies: rest,
            })
        } else {
            let m = i - (j & low_bits(i)).count_ones() as usize;
            FaceStep::Through {
                base_face: m,
                outer: rest,
                outer_dim: n - 1,
            }
        }
    }

    /// Reapplies a degeneracy mask (ambient `outer_dim`, collapsing onto
    /// `self.dim()`) on top of this simplex.
    pub fn under(&self, outer: u64, outer_dim: usize) -> Self {
        debug_assert_eq!(outer.count_ones() as usize + self.dim(), outer_dim);
        SimplexRef {
            dim: outer_dim as u16,
            base_dim: self.base_dim,
            base: self.base,
            degeneracies: compose_masks(outer, outer_dim, self.degeneracies),
        }
    }
}

/// Result of pushing a face operator through a degeneracy word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceStep {
    Absorbed(SimplexRef),
    Through {
        base_face: usize,
        outer: u64,
        outer_dim: usize,
    },
}

pub(crate) fn collapse_of(mask: u64, n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n + 1);
    let mut v = 0;
    out.push(0);
    for i in 0..n {
        if mask >> i & 1 == 0 {
            v += 1;
        }
        out.push(v);
    }
    out
}

/// Mask after `s_j`: a new repeat at `j`, later repeats shift up by one.
#[inline]
pub(crate) fn insert_repeat(mask: u64, j: usize) -> u64 {
    let low = mask & low_bits(j);
    let high = (mask >> j) << (j + 1);
    low | (1u64 << j) | high
}

/// Mask of `collapse ∘ δ_i` on `[n-1]`.
#[inline]
pub(crate) fn delete_position(mask: u64, i: usize, n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    if i == 0 {
        return mask >> 1;
    }
    if i == n {
        return mask & low_bits(n - 1);
    }
    let low = mask & low_bits(i - 1);
    let merged = ((mask >> (i - 1)) & (mask >> i) & 1) << (i - 1);
    let high = (mask >> (i + 1)) << i;
    low | merged | high
}

/// Mask of `inner ∘ outer` where `outer: [outer_dim] -> [m]` and `inner: [m] -> [p]`.
pub(crate) fn compose_masks(outer: u64, outer_dim: usize, inner: u64) -> u64 {
    let mut v = 0usize;
    let mut out = 0u64;
    for k in 0..outer_dim {
        if outer >> k & 1 == 1 {
            out |= 1 << k;
        } else {
            if inner >> v & 1 == 1 {
                out |= 1 << k;
            }
            v += 1;
        }
    }
    out
}

/// Removes the positions set in `common` from `mask`, packing the rest down.
#[inline]
pub(crate) fn strip_positions(mask: u64, common: u64, n: usize) -> u64 {
    let mut out = 0u64;
    let mut w = 0;
    for k in 0..n {
        if common >> k & 1 == 1 {
            continue;
        }
        if mask >> k & 1 == 1 {
            out |= 1 << w;
        }
        w += 1;
    }
    out
}

/// Formats the degeneracy word the way it acts: `s3s1` means `s_3 s_1`.
pub fn word_string(r: &SimplexRef) -> String {
    let mut w = r.word();
    w.reverse();
    w.iter().map(|j| format!("s{j}")).collect()
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "{}@", word_string(self))?;
        }
        write!(f, "#{}.{}", self.base_dim, self.base)
    }
}

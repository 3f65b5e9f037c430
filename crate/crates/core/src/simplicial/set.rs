use std::collections::HashMap;

use super::simplex_ref::{word_string, FaceStep, SimplexRef, MAX_DIM};
use crate::error::{Error, Result};

/// Per-dimension storage: labels plus a flat face table with stride `dim + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Level {
    pub labels: Vec<String>,
    pub faces: Vec<SimplexRef>,
}

/// Components of product simplices, flat with stride `arity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Tuples {
    pub arity: usize,
    pub levels: Vec<Vec<SimplexRef>>,
}

/// A finite pointed simplicial set, stored through dimension `truncation`.
///
/// Simplices are presented by their nondegenerate ones; vertex 0 is the
/// basepoint. Sets built as products or smash products also remember the
/// component tuple of each nondegenerate simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    truncation: usize,
    levels: Vec<Level>,
    tuples: Option<Tuples>,
}

impl FiniteSimplicialSet {
    /// The one-point simplicial set `*`.
    pub fn point(truncation: usize) -> Self {
        let mut levels = vec![Level::default(); truncation + 1];
        levels[0].labels.push("*".to_string());
        levels[0].faces.push(SimplexRef::nondegenerate(0, 0));
        FiniteSimplicialSet {
            truncation,
            levels,
            tuples: None,
        }
    }

    pub(crate) fn from_levels(truncation: usize, levels: Vec<Level>, tuples: Option<Tuples>) -> Self {
        debug_assert_eq!(levels.len(), truncation + 1);
        FiniteSimplicialSet {
            truncation,
            levels,
            tuples,
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn count(&self, dim: usize) -> usize {
        self.levels.get(dim).map_or(0, |l| l.labels.len())
    }

    pub fn basepoint(&self) -> SimplexRef {
        SimplexRef::nondegenerate(0, 0)
    }

    /// Whether `r` is a degeneracy of the basepoint.
    pub fn is_basepoint(r: &SimplexRef) -> bool {
        r.base_dim() == 0 && r.base() == 0
    }

    pub fn label(&self, dim: usize, id: u32) -> &str {
        &self.levels[dim].labels[id as usize]
    }

    pub fn labels(&self, dim: usize) -> &[String] {
        &self.levels[dim].labels
    }

    /// Formats any simplex as `word@label`, or `label` when nondegenerate.
    pub fn ref_string(&self, r: &SimplexRef) -> String {
        let base = self.label(r.base_dim(), r.base());
        if r.is_degenerate() {
            format!("{}@{}", word_string(r), base)
        } else {
            base.to_string()
        }
    }

    /// Face table entry `d_i` of a nondegenerate simplex.
    pub fn stored_face(&self, dim: usize, id: u32, i: usize) -> SimplexRef {
        self.levels[dim].faces[id as usize * (dim + 1) + i]
    }

    pub fn stored_faces(&self, dim: usize, id: u32) -> &[SimplexRef] {
        let k = dim + 1;
        &self.levels[dim].faces[id as usize * k..(id as usize + 1) * k]
    }

    pub fn tuple_arity(&self) -> Option<usize> {
        self.tuples.as_ref().map(|t| t.arity)
    }

    /// Component tuple of a nondegenerate simplex of a product set.
    pub fn tuple(&self, dim: usize, id: u32) -> Option<&[SimplexRef]> {
        let t = self.tuples.as_ref()?;
        let a = t.arity;
        Some(&t.levels[dim][id as usize * a..(id as usize + 1) * a])
    }

    pub(crate) fn tuples_raw(&self) -> Option<&Tuples> {
        self.tuples.as_ref()
    }

    /// Checks that `r` names an existing simplex within the truncation.
    pub fn check_ref(&self, r: &SimplexRef) -> Result<()> {
        if r.dim() > self.truncation {
            return Err(Error::Truncation {
                requested: r.dim(),
                available: self.truncation,
            });
        }
        if r.base() as usize >= self.count(r.base_dim()) {
            return Err(Error::UnknownSimplex {
                dim: r.base_dim(),
                id: r.base(),
            });
        }
        Ok(())
    }

    /// `d_i r` in normal form.
    pub fn face(&self, r: &SimplexRef, i: usize) -> Result<SimplexRef> {
        self.check_ref(r)?;
        if r.dim() == 0 || i > r.dim() {
            return Err(Error::IndexOutOfRange { index: i, dim: r.dim() });
        }
        Ok(self.face_unchecked(r, i))
    }

    pub(crate) fn face_unchecked(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        match r.face_step(i) {
            FaceStep::Absorbed(f) => f,
            FaceStep::Through {
                base_face,
                outer,
                outer_dim,
            } => self
                .stored_face(r.base_dim(), r.base(), base_face)
                .under(outer, outer_dim),
        }
    }

    /// `s_j r` in normal form.
    pub fn degenerate(&self, r: &SimplexRef, j: usize) -> Result<SimplexRef> {
        self.check_ref(r)?;
        if j > r.dim() {
            return Err(Error::IndexOutOfRange { index: j, dim: r.dim() });
        }
        if r.dim() >= MAX_DIM {
            return Err(Error::Truncation {
                requested: r.dim() + 1,
                available: MAX_DIM,
            });
        }
        Ok(r.degenerate(j))
    }

    /// Checks `d_i d_j x = d_{j-1} d_i x` for every stored simplex and `i < j`.
    pub fn check_identities(&self) -> Result<()> {
        for dim in 2..=self.truncation {
            for id in 0..self.count(dim) as u32 {
                let x = SimplexRef::nondegenerate(dim, id);
                for j in 1..=dim {
                    let dj = self.face_unchecked(&x, j);
                    for i in 0..j {
                        let lhs = self.face_unchecked(&dj, i);
                        let di = self.face_unchecked(&x, i);
                        let rhs = self.face_unchecked(&di, j - 1);
                        if lhs != rhs {
                            return Err(Error::IdentityViolation {
                                label: self.label(dim, id).to_string(),
                                dim,
                                detail: format!(
                                    "d{i}d{j} = {} but d{}d{i} = {}",
                                    self.ref_string(&lhs),
                                    j - 1,
                                    self.ref_string(&rhs)
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Lists every simplex (degenerate ones included) of ambient dimension `dim`.
    pub fn all_simplices(&self, dim: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for p in 0..=dim.min(self.truncation) {
            let k = dim - p;
            for mask in masks_with_ones(dim, k) {
                for id in 0..self.count(p) as u32 {
                    out.push(SimplexRef::from_parts(p, id, mask, dim).expect("valid mask"));
                }
            }
        }
        out
    }

    /// A copy restricted to dimensions `0..=truncation`.
    pub fn truncated(&self, truncation: usize) -> Result<Self> {
        if truncation > self.truncation {
            return Err(Error::Truncation {
                requested: truncation,
                available: self.truncation,
            });
        }
        let levels = self.levels[..=truncation].to_vec();
        let tuples = self.tuples.as_ref().map(|t| Tuples {
            arity: t.arity,
            levels: t.levels[..=truncation].to_vec(),
        });
        Ok(FiniteSimplicialSet {
            truncation,
            levels,
            tuples,
        })
    }

    pub fn find_label(&self, label: &str) -> Option<(usize, u32)> {
        self.levels.iter().enumerate().find_map(|(d, l)| {
            l.labels
                .iter()
                .position(|x| x == label)
                .map(|i| (d, i as u32))
        })
    }
}

/// All `n`-bit masks with exactly `k` ones, in increasing numeric order.
pub(crate) fn masks_with_ones(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let mut m: u64 = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while m < limit {
        out.push(m);
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

/// Incremental construction of a [`FiniteSimplicialSet`] from labels and face lists.
#[derive(Debug, Clone)]
pub struct SimplicialSetBuilder {
    truncation: usize,
    levels: Vec<Level>,
    index: HashMap<String, (usize, u32)>,
}

impl SimplicialSetBuilder {
    pub fn new(truncation: usize) -> Self {
        SimplicialSetBuilder {
            truncation,
            levels: vec![Level::default(); truncation + 1],
            index: HashMap::new(),
        }
    }

    pub fn vertex(&mut self, label: &str) -> Result<SimplexRef> {
        self.simplex(0, label, &[])
    }

    /// Adds a nondegenerate simplex. The first vertex added is the basepoint.
    pub fn simplex(&mut self, dim: usize, label: &str, faces: &[SimplexRef]) -> Result<SimplexRef> {
        if dim > self.truncation {
            return Err(Error::Truncation {
                requested: dim,
                available: self.truncation,
            });
        }
        if self.index.contains_key(label) {
            return Err(Error::Parse(format!("duplicate simplex label `{label}`")));
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::Parse(format!(
                "simplex `{label}` of dimension {dim} needs {expected} faces, got {}",
                faces.len()
            )));
        }
        for f in faces {
            if f.dim() + 1 != dim {
                return Err(Error::MalformedRef(format!(
                    "face of `{label}` has dimension {}, expected {}",
                    f.dim(),
                    dim - 1
                )));
            }
            if f.base() as usize >= self.levels[f.base_dim()].labels.len() {
                return Err(Error::UnknownSimplex {
                    dim: f.base_dim(),
                    id: f.base(),
                });
            }
        }
        let id = self.levels[dim].labels.len() as u32;
        self.levels[dim].labels.push(label.to_string());
        if dim == 0 {
            self.levels[0].faces.push(SimplexRef::nondegenerate(0, id));
        } else {
            self.levels[dim].faces.extend_from_slice(faces);
        }
        self.index.insert(label.to_string(), (dim, id));
        Ok(SimplexRef::nondegenerate(dim, id))
    }

    pub fn lookup(&self, label: &str) -> Option<SimplexRef> {
        self.index
            .get(label)
            .map(|&(d, i)| SimplexRef::nondegenerate(d, i))
    }

    /// Finishes construction, checking the simplicial identities.
    pub fn build(self) -> Result<FiniteSimplicialSet> {
        if self.levels[0].labels.is_empty() {
            return Err(Error::Parse("a pointed simplicial set needs a basepoint vertex".into()));
        }
        let set = FiniteSimplicialSet {
            truncation: self.truncation,
            levels: self.levels,
            tuples: None,
        };
        set.check_identities()?;
        Ok(set)
    }
}

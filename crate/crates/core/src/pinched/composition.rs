use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sequence of positive integers `(α_1, ..., α_d)`, possibly empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Precondition(format!("composition {parts:?} has a zero part")));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// `(1, ..., 1, 2, 1, ..., 1)` of length `s`, with the 2 in position `j` (1-based).
    pub fn gamma(j: usize, s: usize) -> Result<Self> {
        if j == 0 || j >= s {
            return Err(Error::CoverIndexOutOfRange { index: j, s });
        }
        let mut parts = vec![1; s - 1];
        parts[j - 1] = 2;
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `|α| = Σ α_i`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of parts equal to 1 and number of parts at least 2.
    pub fn shape(&self) -> (usize, usize) {
        let ones = self.0.iter().filter(|&&a| a == 1).count();
        (ones, self.0.len() - ones)
    }

    /// All compositions of `n`, in lexicographic order.
    pub fn all_of(n: usize) -> Vec<Composition> {
        fn rec(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if n == 0 {
                out.push(Composition(prefix.clone()));
                return;
            }
            for first in 1..=n {
                prefix.push(first);
                rec(n - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A subset `I ⊆ {1, ..., s-1}` selecting cover pieces `Δ̄^{γ^{(j)}}`, `j ∈ I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverIndex {
    s: usize,
    members: Vec<usize>,
}

impl CoverIndex {
    pub fn new(s: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&j) = members.iter().find(|&&j| j == 0 || j >= s) {
            return Err(Error::CoverIndexOutOfRange { index: j, s });
        }
        Ok(CoverIndex { s, members })
    }

    /// Decodes bit `j - 1` of `bits` as membership of `j`.
    pub fn from_bits(s: usize, bits: u64) -> Result<Self> {
        let members = (1..64).filter(|j| bits >> (j - 1) & 1 == 1).collect();
        Self::new(s, members)
    }

    /// Every nonempty subset of `{1, ..., s-1}`.
    pub fn all_nonempty(s: usize) -> Vec<CoverIndex> {
        if s < 2 {
            return Vec::new();
        }
        (1u64..1 << (s - 1))
            .map(|b| Self::from_bits(s, b).expect("in range"))
            .collect()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Merges positions `j` and `j + 1` for every `j ∈ I`; maximal linked runs
/// become single blocks.
pub fn intersection_to_composition(i: &CoverIndex) -> Composition {
    let s = i.s();
    if s == 0 {
        return Composition::empty();
    }
    let mut parts = Vec::with_capacity(s - i.len());
    let mut run = 1;
    for j in 1..s {
        if i.members.binary_search(&j).is_ok() {
            run += 1;
        } else {
            parts.push(run);
            run = 1;
        }
    }
    parts.push(run);
    Composition(parts)
}

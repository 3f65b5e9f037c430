//! Homology of subcomplexes and quotients of smash powers `Q^{∧s}` without
//! materializing them.
//!
//! A cell is a jointly nondegenerate tuple of simplices of `Q` at a common
//! ambient dimension, none of them a basepoint degeneracy. Components are
//! indexed into per-dimension tables and packed into a `u128` key, so the
//! lexicographic order of tuples is the numeric order of keys.
//!
//! Betti numbers come from cohomology: the coboundary `δ^n` is reduced
//! column by column in increasing key order, pivoting on the largest coface.
//! Pivot rows of `δ^{n-1}` are cleared from `δ^n`, and a column whose largest
//! coface has it as smallest face is already reduced and is never stored.

use std::collections::HashMap;

use super::chain::BettiTable;
use super::matrix::{reduce_mod2, xor_sorted};
use crate::error::{Error, Result};
use crate::simplicial::{FiniteSimplicialSet, PointedSubset, SimplexRef};

const NONE: u16 = u16::MAX;

/// Simplices of one factor at each ambient dimension, with face and coface tables.
#[derive(Clone, Debug)]
pub struct FactorTables {
    top: usize,
    elems: Vec<Vec<SimplexRef>>,
    masks: Vec<Vec<u64>>,
    in_a: Vec<Vec<bool>>,
    /// `faces[n][e * (n + 1) + i]` is `d_i` of element `e` at dimension `n`,
    /// or `NONE` for a basepoint degeneracy.
    faces: Vec<Vec<u16>>,
    /// `cofaces[n][e * (n + 2) + i]` lists the elements `z` at dimension
    /// `n + 1` with `d_i z = e`.
    cofaces: Vec<Vec<Vec<u16>>>,
    max_base_dim: usize,
    bits: u32,
}

impl FactorTables {
    /// Tables through ambient dimension `top` for `Q` with distinguished subset `A`.
    pub fn new(q: &FiniteSimplicialSet, a: &PointedSubset, top: usize) -> Result<Self> {
        if top > q.truncation() {
            return Err(Error::Truncation {
                requested: top,
                available: q.truncation(),
            });
        }
        a.validate(q)?;
        let mut elems = Vec::with_capacity(top + 1);
        let mut index: Vec<HashMap<SimplexRef, u16>> = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let list: Vec<SimplexRef> = q
                .all_simplices(n)
                .into_iter()
                .filter(|r| !FiniteSimplicialSet::is_basepoint(r))
                .collect();
            if list.len() >= NONE as usize {
                return Err(Error::TooLarge(format!("{} simplices in dimension {n}", list.len())));
            }
            index.push(list.iter().enumerate().map(|(i, r)| (*r, i as u16)).collect());
            elems.push(list);
        }
        let masks = elems
            .iter()
            .map(|l| l.iter().map(SimplexRef::degeneracies).collect())
            .collect();
        let in_a = elems
            .iter()
            .map(|l| l.iter().map(|r| a.contains_ref(r)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        let mut cofaces: Vec<Vec<Vec<u16>>> = (0..top)
            .map(|n| vec![Vec::new(); elems[n].len() * (n + 2)])
            .collect();
        faces[0] = vec![NONE; elems[0].len()];
        for n in 1..=top {
            let mut table = Vec::with_capacity(elems[n].len() * (n + 1));
            for (z, r) in elems[n].iter().enumerate() {
                for i in 0..=n {
                    let f = q.face_unchecked(r, i);
                    let fi = index[n - 1].get(&f).copied().unwrap_or(NONE);
                    table.push(fi);
                    if fi != NONE {
                        cofaces[n - 1][fi as usize * (n + 1) + i].push(z as u16);
                    }
                }
            }
            faces.push(table);
        }
        let max_base_dim = (0..=top)
            .flat_map(|n| elems[n].iter().map(|r| r.base_dim()))
            .max()
            .unwrap_or(0);
        let widest = elems.iter().map(Vec::len).max().unwrap_or(0);
        let bits = (usize::BITS - widest.leading_zeros()).max(1);
        Ok(FactorTables {
            top,
            elems,
            masks,
            in_a,
            faces,
            cofaces,
            max_base_dim,
            bits,
        })
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn count(&self, n: usize) -> usize {
        self.elems[n].len()
    }

    pub fn element(&self, n: usize, e: u16) -> SimplexRef {
        self.elems[n][e as usize]
    }

    pub fn index_of(&self, r: &SimplexRef) -> Option<u16> {
        self.elems
            .get(r.dim())?
            .iter()
            .position(|x| x == r)
            .map(|i| i as u16)
    }
}

/// Which cells of `Q^{∧s}` a [`TupleComplex`] consists of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellKind {
    /// All of `Q^{∧s}`.
    Smash,
    /// Tuples with some adjacent pair `x_i = x_{i+1}` lying in `A`.
    Pinched,
    /// `Q^{∧s}` relative to the pinched subcomplex (cells of the quotient).
    SmashModPinched,
    /// Consecutive blocks of the given sizes; in each block of size at least
    /// two all components are equal and lie in `A`.
    Blocks(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Free,
    /// Must differ from the previous component or lie outside `A`.
    NoPinch,
    /// Must equal the previous component, which lies in `A`.
    Same,
}

/// Counters from one Betti computation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionStats {
    pub cells: Vec<usize>,
    pub cleared: Vec<usize>,
    pub apparent: Vec<usize>,
    pub reduced: Vec<usize>,
}

/// A subcomplex or quotient of a smash power, described by a membership rule.
#[derive(Clone, Debug)]
pub struct TupleComplex<'a> {
    tables: &'a FactorTables,
    s: usize,
    kind: CellKind,
}

impl<'a> TupleComplex<'a> {
    pub fn new(tables: &'a FactorTables, s: usize, kind: CellKind) -> Result<Self> {
        if s == 0 {
            return Err(Error::EmptySmashPower);
        }
        if let CellKind::Blocks(b) = &kind {
            if b.iter().sum::<usize>() != s || b.contains(&0) {
                return Err(Error::Precondition(format!("blocks {b:?} do not partition {s}")));
            }
        }
        if tables.bits as usize * s > 128 {
            return Err(Error::TooLarge(format!(
                "{s} components of {} bits do not fit a 128-bit key",
                tables.bits
            )));
        }
        Ok(TupleComplex { tables, s, kind })
    }

    fn pinched(&self, c: &[u16], n: usize) -> bool {
        c.windows(2).any(|w| w[0] == w[1] && self.tables.in_a[n][w[0] as usize])
    }

    /// Membership of a jointly nondegenerate tuple at dimension `n`.
    pub fn contains(&self, c: &[u16], n: usize) -> bool {
        match &self.kind {
            CellKind::Smash => true,
            CellKind::Pinched => self.pinched(c, n),
            CellKind::SmashModPinched => !self.pinched(c, n),
            CellKind::Blocks(blocks) => {
                let mut start = 0;
                for &b in blocks {
                    if b >= 2 {
                        let x = c[start];
                        if !self.tables.in_a[n][x as usize] || c[start..start + b].iter().any(|&y| y != x) {
                            return false;
                        }
                    }
                    start += b;
                }
                true
            }
        }
    }

    fn plans(&self) -> Vec<Vec<Slot>> {
        let s = self.s;
        match &self.kind {
            CellKind::Smash => vec![vec![Slot::Free; s]],
            CellKind::SmashModPinched => {
                let mut p = vec![Slot::NoPinch; s];
                p[0] = Slot::Free;
                vec![p]
            }
            CellKind::Pinched => (0..s.saturating_sub(1))
                .map(|j| {
                    let mut p = vec![Slot::Free; s];
                    for slot in p.iter_mut().take(j + 1).skip(1) {
                        *slot = Slot::NoPinch;
                    }
                    p[j + 1] = Slot::Same;
                    p
                })
                .collect(),
            CellKind::Blocks(blocks) => {
                let mut p = Vec::with_capacity(s);
                for &b in blocks {
                    p.push(Slot::Free);
                    p.extend(std::iter::repeat_n(Slot::Same, b - 1));
                }
                vec![p]
            }
        }
    }

    fn pack(&self, c: &[u16]) -> u128 {
        let b = self.tables.bits;
        c.iter().fold(0u128, |k, &x| (k << b) | x as u128)
    }

    fn unpack(&self, key: u128, out: &mut [u16]) {
        let b = self.tables.bits;
        let m = (1u128 << b) - 1;
        for k in (0..self.s).rev() {
            out[self.s - 1 - k] = ((key >> (b as usize * k)) & m) as u16;
        }
    }

    /// Component simplices of a cell.
    pub fn components(&self, key: u128, n: usize) -> Vec<SimplexRef> {
        let mut c = vec![0u16; self.s];
        self.unpack(key, &mut c);
        c.iter().map(|&e| self.tables.element(n, e)).collect()
    }

    /// Sorted keys of all cells of dimension `n`.
    pub fn cells(&self, n: usize) -> Vec<u128> {
        let mut out = Vec::new();
        let t = self.tables;
        let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
        for plan in self.plans() {
            let mut suffix = vec![0usize; self.s + 1];
            for k in (0..self.s).rev() {
                suffix[k] = suffix[k + 1] + if plan[k] == Slot::Same { 0 } else { t.max_base_dim };
            }
            let mut prefix = Vec::with_capacity(self.s);
            self.enumerate(n, &plan, &suffix, &mut prefix, full, &mut out);
        }
        out.sort_unstable();
        out
    }

    fn enumerate(
        &self,
        n: usize,
        plan: &[Slot],
        suffix: &[usize],
        prefix: &mut Vec<u16>,
        common: u64,
        out: &mut Vec<u128>,
    ) {
        let k = prefix.len();
        if k == self.s {
            if common == 0 {
                out.push(self.pack(prefix));
            }
            return;
        }
        if common.count_ones() as usize > suffix[k] {
            return;
        }
        let t = self.tables;
        match plan[k] {
            Slot::Same => {
                let prev = prefix[k - 1];
                if t.in_a[n][prev as usize] {
                    prefix.push(prev);
                    self.enumerate(n, plan, suffix, prefix, common, out);
                    prefix.pop();
                }
            }
            slot => {
                for e in 0..t.count(n) as u16 {
                    if slot == Slot::NoPinch && prefix[k - 1] == e && t.in_a[n][e as usize] {
                        continue;
                    }
                    prefix.push(e);
                    self.enumerate(n, plan, suffix, prefix, common & t.masks[n][e as usize], out);
                    prefix.pop();
                }
            }
        }
    }

    /// Keys of the nondegenerate faces of a cell that lie in the complex, with
    /// multiplicity.
    fn faces_of(&self, c: &[u16], n: usize, out: &mut Vec<u128>) {
        let t = self.tables;
        let mut f = vec![0u16; self.s];
        'face: for i in 0..=n {
            let mut common = if n == 1 { 0 } else { (1u64 << (n - 1)) - 1 };
            for (k, &x) in c.iter().enumerate() {
                let y = t.faces[n][x as usize * (n + 1) + i];
                if y == NONE {
                    continue 'face;
                }
                common &= t.masks[n - 1][y as usize];
                f[k] = y;
            }
            if common == 0 && self.contains(&f, n - 1) {
                out.push(self.pack(&f));
            }
        }
    }

    /// Coboundary of a cell of dimension `n`: sorted keys, mod 2.
    fn coboundary(&self, c: &[u16], n: usize, out: &mut Vec<u128>) {
        out.clear();
        let t = self.tables;
        let mut lists: Vec<&[u16]> = Vec::with_capacity(self.s);
        let mut z = vec![0u16; self.s];
        for i in 0..=n + 1 {
            lists.clear();
            for &x in c {
                let l = &t.cofaces[n][x as usize * (n + 2) + i];
                if l.is_empty() {
                    break;
                }
                lists.push(l);
            }
            if lists.len() < self.s {
                continue;
            }
            // only positions i-1 and i of the coface can be jointly degenerate
            let mut watch = 0u64;
            if i >= 1 {
                watch |= 1 << (i - 1);
            }
            if i <= n {
                watch |= 1 << i;
            }
            self.lift(&lists, n + 1, 0, watch, &mut z, out);
        }
        reduce_mod2(out);
    }

    fn lift(&self, lists: &[&[u16]], m: usize, k: usize, common: u64, z: &mut [u16], out: &mut Vec<u128>) {
        if k == self.s {
            if common == 0 && self.contains(z, m) {
                out.push(self.pack(z));
            }
            return;
        }
        for &y in lists[k] {
            z[k] = y;
            self.lift(lists, m, k + 1, common & self.tables.masks[m][y as usize], z, out);
        }
    }

    /// Reduced mod-2 Betti numbers through `max_dim`.
    pub fn betti(&self, max_dim: usize) -> Result<BettiTable> {
        Ok(self.betti_with_stats(max_dim)?.0)
    }

    pub fn betti_with_stats(&self, max_dim: usize) -> Result<(BettiTable, ReductionStats)> {
        if max_dim + 1 > self.tables.top {
            return Err(Error::Truncation {
                requested: max_dim + 1,
                available: self.tables.top,
            });
        }
        let mut stats = ReductionStats::default();
        let mut ranks = Vec::with_capacity(max_dim + 1);
        let mut counts = Vec::with_capacity(max_dim + 1);
        let mut cleared: Vec<u128> = Vec::new();
        let mut comps = vec![0u16; self.s];
        let mut cob = Vec::new();
        let mut faces = Vec::new();
        for n in 0..=max_dim {
            let cells = self.cells(n);
            counts.push(cells.len());
            cleared.sort_unstable();
            let mut pivots: HashMap<u128, Option<Vec<u128>>> = HashMap::new();
            let (mut apparent, mut reduced) = (0, 0);
            let mut ci = 0;
            for &sigma in &cells {
                while ci < cleared.len() && cleared[ci] < sigma {
                    ci += 1;
                }
                if ci < cleared.len() && cleared[ci] == sigma {
                    continue;
                }
                self.unpack(sigma, &mut comps);
                self.coboundary(&comps, n, &mut cob);
                let Some(&tau) = cob.last() else { continue };
                if let std::collections::hash_map::Entry::Vacant(e) = pivots.entry(tau) {
                    let mut tc = vec![0u16; self.s];
                    self.unpack(tau, &mut tc);
                    faces.clear();
                    self.faces_of(&tc, n + 1, &mut faces);
                    if faces.iter().min() == Some(&sigma) {
                        e.insert(None);
                        apparent += 1;
                        continue;
                    }
                }
                let mut col = std::mem::take(&mut cob);
                while let Some(&p) = col.last() {
                    match pivots.get(&p) {
                        None => break,
                        Some(Some(other)) => col = xor_sorted(&col, other),
                        Some(None) => {
                            // apparent pivot: its column is the coboundary of its smallest face
                            let mut pc = vec![0u16; self.s];
                            self.unpack(p, &mut pc);
                            faces.clear();
                            self.faces_of(&pc, n + 1, &mut faces);
                            let src = *faces.iter().min().expect("apparent pivots have faces");
                            let mut sc = vec![0u16; self.s];
                            self.unpack(src, &mut sc);
                            let mut other = Vec::new();
                            self.coboundary(&sc, n, &mut other);
                            col = xor_sorted(&col, &other);
                        }
                    }
                }
                if let Some(&p) = col.last() {
                    pivots.insert(p, Some(col));
                    reduced += 1;
                }
            }
            stats.cells.push(cells.len());
            stats.cleared.push(cleared.len());
            stats.apparent.push(apparent);
            stats.reduced.push(reduced);
            ranks.push(pivots.len());
            cleared = pivots.into_keys().collect();
        }
        let values = (0..=max_dim)
            .map(|n| {
                let below = if n == 0 { 0 } else { ranks[n - 1] };
                (counts[n] - below - ranks[n]) as u64
            })
            .collect();
        Ok((BettiTable::from_values(values), stats))
    }
}

//! Text format for finite pointed simplicial sets, optionally with an involution.
//!
//! ```toml
//! truncation = 3
//! simplices = [["*"], ["e"], ["g1", "g2"]]
//!
//! [faces]
//! e = ["*", "*"]
//! g1 = ["e", "s0@*", "s0@*"]
//! g2 = ["e", "s0@*", "s0@*"]
//! ```
//!
//! A face is a label, or `word@label` where the word lists degeneracies in
//! the order they act (`s1s0@v` is `s_1 s_0 v`). Any order is accepted on
//! input; output always uses the normal form. `basepoint` names the base
//! vertex and defaults to the first one. `involution` maps labels to labels;
//! omitted labels are fixed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::action::Involution;
use super::set::{FiniteSimplicialSet, SimplicialSetBuilder};
use super::simplex_ref::SimplexRef;
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    truncation: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basepoint: Option<String>,
    simplices: Vec<Vec<String>>,
    #[serde(default)]
    faces: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    involution: Option<BTreeMap<String, String>>,
}

/// A parsed simplicial-set file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialFile {
    pub set: FiniteSimplicialSet,
    pub involution: Option<Involution>,
}

impl SimplicialFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        from_raw(raw)
    }

    pub fn to_text(&self) -> String {
        let raw = to_raw(&self.set, self.involution.as_ref());
        toml::to_string(&raw).expect("simplicial files always serialize")
    }
}

/// Reads one face entry, normalizing its degeneracy word.
fn parse_face(b: &SimplicialSetBuilder, owner: &str, text: &str) -> Result<SimplexRef> {
    let (word, label) = match text.split_once('@') {
        Some((w, l)) => (w, l),
        None => ("", text),
    };
    let mut r = b.lookup(label).ok_or_else(|| {
        Error::Parse(format!("face `{text}` of `{owner}` names unknown simplex `{label}`"))
    })?;
    let bad = || Error::MalformedRef(format!("face `{text}` of `{owner}`: bad degeneracy word `{word}`"));
    let mut indices = Vec::new();
    for part in word.split('s').skip(1) {
        indices.push(part.parse::<usize>().map_err(|_| bad())?);
    }
    if !word.is_empty() && (!word.starts_with('s') || indices.is_empty()) {
        return Err(bad());
    }
    for &j in indices.iter().rev() {
        if j > r.dim() || r.dim() + 1 > super::simplex_ref::MAX_DIM {
            return Err(bad());
        }
        r = r.degenerate(j);
    }
    Ok(r)
}

fn from_raw(mut raw: RawFile) -> Result<SimplicialFile> {
    if raw.simplices.len() > raw.truncation + 1 {
        return Err(Error::Parse(format!(
            "simplices listed up to dimension {} but truncation is {}",
            raw.simplices.len() - 1,
            raw.truncation
        )));
    }
    if raw.simplices.first().is_none_or(|v| v.is_empty()) {
        return Err(Error::Parse("dimension 0 must list at least one vertex".into()));
    }
    if let Some(bp) = &raw.basepoint {
        let pos = raw.simplices[0]
            .iter()
            .position(|l| l == bp)
            .ok_or_else(|| Error::Parse(format!("basepoint `{bp}` is not a vertex")))?;
        let v = raw.simplices[0].remove(pos);
        raw.simplices[0].insert(0, v);
    }
    let mut b = SimplicialSetBuilder::new(raw.truncation);
    for (dim, labels) in raw.simplices.iter().enumerate() {
        for label in labels {
            if label.is_empty() || label.contains('@') {
                return Err(Error::Parse(format!("invalid label `{label}`")));
            }
            let faces = if dim == 0 {
                if raw.faces.contains_key(label) {
                    return Err(Error::Parse(format!("vertex `{label}` cannot have faces")));
                }
                Vec::new()
            } else {
                let texts = raw
                    .faces
                    .get(label)
                    .ok_or_else(|| Error::Parse(format!("no faces given for `{label}`")))?;
                texts
                    .iter()
                    .map(|t| parse_face(&b, label, t))
                    .collect::<Result<Vec<_>>>()?
            };
            b.simplex(dim, label, &faces)?;
        }
    }
    for label in raw.faces.keys() {
        if b.lookup(label).is_none() {
            return Err(Error::Parse(format!("faces given for undeclared simplex `{label}`")));
        }
    }
    let set = b.build()?;
    let involution = match raw.involution {
        None => None,
        Some(map) => Some(parse_involution(&set, &map)?),
    };
    Ok(SimplicialFile { set, involution })
}

fn parse_involution(set: &FiniteSimplicialSet, map: &BTreeMap<String, String>) -> Result<Involution> {
    let mut perm: Vec<Vec<u32>> = (0..=set.truncation())
        .map(|d| (0..set.count(d) as u32).collect())
        .collect();
    let mut assigned: Vec<Vec<bool>> = perm.iter().map(|p| vec![false; p.len()]).collect();
    for (from, to) in map {
        let lookup = |l: &str| {
            set.find_label(l)
                .ok_or_else(|| Error::Parse(format!("involution names unknown simplex `{l}`")))
        };
        let (da, a) = lookup(from)?;
        let (db, bb) = lookup(to)?;
        if da != db {
            return Err(Error::InvalidInvolution(format!(
                "`{from}` and `{to}` have different dimensions"
            )));
        }
        for (x, y) in [(a, bb), (bb, a)] {
            if assigned[da][x as usize] && perm[da][x as usize] != y {
                return Err(Error::InvalidInvolution(format!(
                    "conflicting images for `{}`",
                    set.label(da, x)
                )));
            }
            perm[da][x as usize] = y;
            assigned[da][x as usize] = true;
        }
    }
    Involution::new(set, perm)
}

fn to_raw(set: &FiniteSimplicialSet, involution: Option<&Involution>) -> RawFile {
    let t = set.truncation();
    let mut top = t;
    while top > 0 && set.count(top) == 0 {
        top -= 1;
    }
    let simplices = (0..=top).map(|d| set.labels(d).to_vec()).collect();
    let mut faces = BTreeMap::new();
    for d in 1..=t {
        for id in 0..set.count(d) as u32 {
            let list = set
                .stored_faces(d, id)
                .iter()
                .map(|r| set.ref_string(r))
                .collect();
            faces.insert(set.label(d, id).to_string(), list);
        }
    }
    let involution = involution.map(|inv| {
        let mut m = BTreeMap::new();
        for d in 0..=t {
            for id in 0..set.count(d) as u32 {
                let j = inv.image(d, id);
                if j != id {
                    m.insert(set.label(d, id).to_string(), set.label(d, j).to_string());
                }
            }
        }
        m
    });
    RawFile {
        truncation: t,
        basepoint: None,
        simplices,
        faces,
        involution,
    }
}

/// Serializes a set (and optional involution) in the file format.
pub fn to_text(set: &FiniteSimplicialSet, involution: Option<&Involution>) -> String {
    toml::to_string(&to_raw(set, involution)).expect("simplicial files always serialize")
}

//! Mod-2 Betti numbers of loop spaces of 1-stunted Borel constructions of
//! C₂-actions, computed by brute-force simplicial homology, by Mayer–Vietoris
//! E¹ sums, and by closed formulas.

pub mod closed_form;
pub mod error;
pub mod homology;
pub mod pinched;
pub mod report;
pub mod simplicial;

pub use error::{Error, Result};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range for a simplex of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("unknown nondegenerate simplex {id} in dimension {dim}")]
    UnknownSimplex { dim: usize, id: u32 },

    #[error("dimension {requested} requested but data is only available through dimension {available}")]
    Truncation { requested: usize, available: usize },

    #[error("malformed simplex reference: {0}")]
    MalformedRef(String),

    #[error("simplicial identity violated at {label} (dimension {dim}): {detail}")]
    IdentityViolation {
        label: String,
        dim: usize,
        detail: String,
    },

    #[error("invalid pointed subset: {0}")]
    InvalidSubset(String),

    #[error("invalid involution: {0}")]
    InvalidInvolution(String),

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("smash power requires s >= 1 (use `FiniteSimplicialSet::point` for s = 0)")]
    EmptySmashPower,

    #[error("empty composition")]
    EmptyComposition,

    #[error("cover index {index} out of range for s = {s}")]
    CoverIndexOutOfRange { index: usize, s: usize },

    #[error("Betti number b{dim} is outside the certified range 0..={max}")]
    OutsideCertifiedRange { dim: usize, max: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("tuple complex too large to index: {0}")]
    TooLarge(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

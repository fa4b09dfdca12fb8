use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },

    #[error("x-variable count mismatch: {left} vs {right}")]
    XVariableCount { left: usize, right: usize },

    #[error("geometric series factor requires a t-degree truncation")]
    MissingTruncation,

    #[error("color {color} out of range 1..={r}")]
    ColorOutOfRange { color: usize, r: usize },

    #[error("shape mismatch: (r={r1}, N={n1}) vs (r={r2}, N={n2})")]
    ShapeMismatch {
        r1: usize,
        n1: usize,
        r2: usize,
        n2: usize,
    },

    #[error("total sizes differ: {0} vs {1}")]
    TotalMismatch(i64, i64),

    #[error("alpha vector has length {got}, expected {expected}")]
    AlphaLength { got: usize, expected: usize },

    #[error("invalid multipartition: {0}")]
    InvalidMultipartition(String),

    #[error("x-monomial {0:?} is not the image of any alpha vector")]
    NotInAlphaImage(Vec<i64>),

    #[error("no antidominant extreme monomial left; input is not a sum of characters")]
    NotACharacter,

    #[error("character peeling exceeded {0} iterations")]
    PeelingCap(usize),

    #[error("calibration self-test failed: {0}")]
    Calibration(String),

    #[error("invalid affine window: {0}")]
    InvalidWindow(String),

    #[error("residue set {0:?} is not a proper consecutive arc")]
    NotAnArc(Vec<usize>),

    #[error("block {n}: interval [{lower}, {upper}] covers all {d} residues")]
    FullArc {
        n: usize,
        lower: i64,
        upper: i64,
        d: usize,
    },

    #[error("invalid flag type: {0}")]
    InvalidFlagType(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

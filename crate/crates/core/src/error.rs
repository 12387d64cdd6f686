use std::fmt;

use thiserror::Error;

/// Which side of a bimodule action a check refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
            Side::TwoSided => write!(f, "two-sided"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("structure constants not associative: (e{i}·e{j})·e{k} ≠ e{i}·(e{j}·e{k}) in coordinate {l}")]
    NotAssociative {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },

    #[error("embedding is not injective")]
    NotInjective,

    #[error("embedding not multiplicative on basis pair ({i},{j})")]
    NotMultiplicative { i: usize, j: usize },

    #[error("not an ideal: {side} product of ambient basis {b_index} with sub basis {a_index} leaves the image")]
    NotIdeal {
        side: Side,
        b_index: usize,
        a_index: usize,
    },

    #[error("left action is not a homomorphism on basis pair ({i},{j})")]
    NotLeftAction { i: usize, j: usize },

    #[error("right action is not an anti-homomorphism on basis pair ({i},{j})")]
    NotRightAction { i: usize, j: usize },

    #[error("left and right actions do not commute on basis pair ({i},{j})")]
    ActionsDontCommute { i: usize, j: usize },

    #[error("ambient-algebra module does not restrict to the given module through the embedding")]
    RestrictionMismatch,

    #[error("operator leaves the solution space; inputs are inconsistent")]
    NotClosed,

    #[error("module has nonzero annihilator")]
    AnnihilatorNonzero,

    #[error("absorption fails: {side} action of basis element {index} leaves the embedded image")]
    AbsorptionFails { side: Side, index: usize },

    #[error("products do not span the algebra")]
    SquareSpanDeficient,

    #[error("module is not induced")]
    NotInduced,

    #[error("map is not a derivation: fails on basis pair ({i},{j})")]
    NotDerivation { i: usize, j: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid document: {0}")]
    Doc(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable process exit code contract: 2 for i/o and parse trouble,
    /// 1 for everything that means "the mathematics rejected the input".
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Read { .. } | Error::Json(_) => 2,
            _ => 1,
        }
    }
}

use thiserror::Error;

/// Errors raised by the wppsg library.
///
/// Indices carried by the variants are 1-based, like every other index that
/// leaves the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible degree: {left} vs {right}")]
    IncompatibleDegree { left: usize, right: usize },

    #[error("not a permutation of [1, {n}]: {reason}")]
    NotAPermutation { n: usize, reason: String },

    #[error("element {element} lies outside [1, {n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("duplicate element {0} in specification set")]
    DuplicateElement(usize),

    #[error("degree must be at least {min}, got {n}")]
    DegreeTooSmall { n: usize, min: usize },

    #[error("empty interval: {lo} > {hi}")]
    EmptyInterval { lo: usize, hi: usize },

    #[error("not a WPPSG_0 instance: specification set {index} is not an interval")]
    NotAnInterval { index: usize },

    #[error("φ ∉ S_{{X_{index}}}: transformation violates its validity condition")]
    InvalidTransformation { index: usize },

    #[error("transformation index {index} exceeds m = {m}")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("invalid chain description: {0}")]
    InvalidChain(String),

    #[error("witness rejected: {0}")]
    InvalidWitness(String),

    #[error("consecutiveness condition violated: {0}")]
    NotConsecutive(String),

    #[error("permutation is not consistent with the tree: {0}")]
    Inconsistent(String),

    #[error("improper PQ-tree: {0}")]
    ImproperTree(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("oracle scale exceeded: n = {n} exceeds the cap {cap}")]
    OracleScaleExceeded { n: usize, cap: usize },

    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    RaggedMatrix { row: usize, len: usize, expected: usize },

    #[error("cannot generate instance: {0}")]
    Generation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

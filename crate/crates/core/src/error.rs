use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("invalid compression indices i={i}, j={j} (need 1 <= i < j <= {n})")]
    BadIndices { i: u32, j: u32, n: u32 },

    #[error("size mismatch: |A| = {0}, |B| = {1}")]
    SizeMismatch(usize, usize),

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("{what} exceeds the default guard ({limit}); pass --override-guard to proceed")]
    Guard { what: String, limit: String },

    #[error("family is not intersecting")]
    NotIntersecting,

    #[error("not a maximal left-compressed intersecting family of [2r]^(r): {0}")]
    NotMaximalLcif(String),

    #[error("invalid hitting set: {0}")]
    InvalidX(String),

    #[error("catalog: {0}")]
    Catalog(#[from] CatalogError),

    #[error("i/o error on {path}: {reason}")]
    Io { path: String, reason: String },
}

/// Reasons a catalog file is rejected. Each variant names the first invariant
/// that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error(
        "line {line}: malformed header {found:?} (expected `mlcif-catalog v1 r=<r> count=<K>`)"
    )]
    BadHeader { line: usize, found: String },

    #[error("header declares r={found}, expected r={expected}")]
    WrongR { expected: u32, found: u32 },

    #[error("line {line}: malformed record {found:?}")]
    BadRecord { line: usize, found: String },

    #[error("line {line}: record r={found} does not match header r={expected}")]
    RecordR {
        line: usize,
        expected: u32,
        found: u32,
    },

    #[error("line {line}: invalid generator: {reason}")]
    BadGenerator { line: usize, reason: String },

    #[error("line {line}: generators are not in canonical order")]
    NonCanonicalGenerators { line: usize },

    #[error("line {line}: generators are not pairwise incomparable")]
    NotAntichain { line: usize },

    #[error("line {line}: generators are not pairwise intersecting")]
    NotIntersecting { line: usize },

    #[error("line {line}: stored size2r={stored} but the generated family has {actual} members")]
    SizeMismatch {
        line: usize,
        stored: String,
        actual: String,
    },

    #[error("line {line}: entry does not generate a maximal intersecting family")]
    NotMaximal { line: usize },

    #[error("line {line}: duplicate entry")]
    Duplicate { line: usize },

    #[error("line {line}: entries are not in canonical order")]
    Unsorted { line: usize },

    #[error("header count={declared} but file holds {actual} records")]
    CountMismatch { declared: usize, actual: usize },

    #[error("catalog lacks the star entry {{1}}")]
    MissingStar,

    #[error("catalog lacks the Hilton-Milner entry")]
    MissingHiltonMilner,
}

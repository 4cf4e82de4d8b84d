use thiserror::Error;

use crate::hypergroup::ValidationReport;

/// Everything that can go wrong while building or checking hypergroups.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("axiom failure:\n{0}")]
    AxiomFailure(ValidationReport),

    #[error("measures live on different hosts (expected {expected} weights, found {found})")]
    HostMismatch { expected: usize, found: usize },

    #[error("no invariant probability measure exists")]
    NoInvariantMeasure,

    #[error("{0:?} is not a subhypergroup")]
    NotSubhypergroup(Vec<usize>),

    #[error("random combination spectrum stayed degenerate after {retries} retries")]
    DegenerateSpectrum { retries: usize },

    #[error("regular representation is not diagonalizable: {0}")]
    NonDiagonalizable(String),

    #[error("dual is not a hypergroup: c[{i}][{j}][{k}] = {value:e}")]
    NotStrong {
        i: usize,
        j: usize,
        k: usize,
        value: f64,
    },

    #[error("no row matches: {0}")]
    NoMatchingRow(String),

    #[error("ambiguous row match: rows {0} and {1} are indistinguishable")]
    AmbiguousMatch(usize, usize),

    #[error("hypergroup has {order} elements, above the bound {bound}")]
    SizeBound { order: usize, bound: usize },

    #[error("measure does not decompose over the quotient classes: {0}")]
    DecompositionFailure(String),

    #[error("{0} is not an automorphism")]
    NotAutomorphism(String),

    #[error("invalid hyperfield:\n{0}")]
    HyperfieldInvalid(ValidationReport),

    #[error("restriction is not surjective: no character restricts to {0}")]
    ResNotSurjective(usize),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error in field `{0}`")]
    Schema(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

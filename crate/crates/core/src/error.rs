use alloc::string::String;
use core::fmt;

use crate::graph::Edge;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the core.
///
/// Variants split into two groups: domain errors (bad input, violated
/// preconditions) and invariant failures (the machinery contradicted itself).
/// [`Error::is_invariant`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    TooFewPoints(usize),
    PointOutOfRange { point: usize, n: usize },
    SelfLoop(usize),
    DuplicateEdge(Edge),
    EdgeNotInGraph(Edge),
    SameEdge(Edge),
    EdgeUncrossed(Edge),
    EmptyGraph,
    NotATree,
    NotGenusOne,
    UnknownForm(String),
    AboveCeiling { n: usize, ceiling: usize },
    BelowMinimum { n: u64, minimum: u64 },
    WrongResidue { n: usize },
    TooManyEdges { k: usize, limit: usize },
    InvalidDelimiter { delimiter: usize, children: usize },
    CatalogDerivation(String),
    Invariant(String),
}

impl Error {
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::CatalogDerivation(_) | Error::Invariant(_))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TooFewPoints(n) => write!(f, "a circle graph needs at least 3 points, got {n}"),
            Error::PointOutOfRange { point, n } => {
                write!(f, "point {point} is outside 1..={n}")
            }
            Error::SelfLoop(p) => write!(f, "self-loop at point {p}"),
            Error::DuplicateEdge(e) => write!(f, "duplicate edge {e}"),
            Error::EdgeNotInGraph(e) => write!(f, "edge {e} is not in the graph"),
            Error::SameEdge(e) => write!(f, "edge {e} compared with itself"),
            Error::EdgeUncrossed(e) => write!(f, "edge {e} is not crossed by any edge"),
            Error::EmptyGraph => f.write_str("graph has no edges"),
            Error::NotATree => f.write_str("graph is not a tree"),
            Error::NotGenusOne => f.write_str("tree is not genus one"),
            Error::UnknownForm(id) => write!(f, "unknown form id {id:?}"),
            Error::AboveCeiling { n, ceiling } => {
                write!(f, "n = {n} is above the census ceiling of {ceiling}")
            }
            Error::BelowMinimum { n, minimum } => write!(f, "n = {n} must be at least {minimum}"),
            Error::WrongResidue { n } => write!(f, "n = {n} is not congruent to 2 mod 4"),
            Error::TooManyEdges { k, limit } => {
                write!(f, "{k} edges is above the enumeration limit of {limit}")
            }
            Error::InvalidDelimiter { delimiter, children } => {
                write!(f, "delimiter {delimiter} is outside 1..={} for {children} children", children + 1)
            }
            Error::CatalogDerivation(msg) => write!(f, "catalog derivation failed: {msg}"),
            Error::Invariant(msg) => write!(f, "invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

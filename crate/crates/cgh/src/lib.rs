//! Saturation problems in convex geometric hypergraphs (cgh's).
//!
//! A cgh is a family of r-sets over n cyclically ordered vertices. This crate
//! provides the two-edge pattern catalog, exact saturation/extremal numbers at
//! small n via conflict-graph search, the named saturated constructions, and
//! the structural machinery for families saturated with respect to two
//! geometrically disjoint edges.

pub mod bitset;
pub mod combin;
pub mod constructions;
pub mod cyclic;
pub mod m1;
pub mod patterns;
pub mod saturation;
pub mod verify;

pub use cyclic::{arc_members, canonical_form, is_isomorphic, reflect, rotate, Arc, Cgh, Edge};
pub use patterns::{classify_pair, conflict_graph, pattern_degree, PatternId};
pub use saturation::{
    closure, enumerate_minimum_saturated, ex_exact, is_free, is_saturated, sat_exact, SolveReport,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for n={n}")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("edge {0:?} does not have the required uniformity")]
    BadEdge(Vec<usize>),
    #[error("open arc with equal endpoints is ill-formed")]
    EmptyOpenArc,
    #[error("edges must be distinct")]
    EqualEdges,
    #[error("uniformity mismatch: {0} vs {1}")]
    UniformityMismatch(usize, usize),
    #[error("n={n} too small: {reason}")]
    NTooSmall { n: usize, reason: String },
    #[error("input is not {pattern}-free: edges {first:?} and {second:?} form the pattern")]
    NotFree {
        pattern: String,
        first: Vec<usize>,
        second: Vec<usize>,
    },
    #[error("unknown pattern tag `{0}`")]
    UnknownPattern(String),
    #[error("tuple is not semi-valid: {0:?}")]
    NotSemiValid(Vec<usize>),
    #[error("tuple is not {r}-valid: {points:?}")]
    NotRValid { r: usize, points: Vec<usize> },
    #[error("tuple is not ({i},{k})-consecutive")]
    NotConsecutive { i: usize, k: usize },
    #[error("tuple is fully consecutive; no local move applies")]
    FullyConsecutive,
    #[error("input family is not saturated: {0}")]
    NotSaturatedInput(String),
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::complex::{Face, VertexId};
use crate::nerve::NerveMatch;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // complexes
    #[error("facet {0:?} repeats a vertex")]
    DuplicateVertex(Vec<u32>),
    #[error("empty facet")]
    EmptyFacet,
    #[error("skeleton dimension {k} exceeds simplex dimension {n}")]
    BadSkeleton { n: usize, k: usize },
    #[error("{0} is not a face of the complex")]
    NotAFace(Face),

    // geometry
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("point list is empty")]
    NoPoints,
    #[error("non-generic position: {0}")]
    Genericity(String),

    // families and nerves
    #[error("duplicate body label {0}")]
    DuplicateLabel(VertexId),
    #[error("family has {size} bodies, cap is {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("family labels do not match the complex vertices")]
    LabelMismatch,
    #[error("nerve does not match the complex: {0:?}")]
    NerveMismatch(NerveMatch),
    #[error("witness for {face} violates row {row} of body {body}")]
    WitnessOutside {
        face: Face,
        body: VertexId,
        row: usize,
    },
    #[error("complex is not the barycentric subdivision of the source complex")]
    NotSubdivision,

    // obstruction
    #[error("duplicate placement parameter for vertex {0}")]
    DuplicateParameter(VertexId),
    #[error("expected {expected} placement parameters, found {found}")]
    ParameterCount { expected: usize, found: usize },
    #[error("complex has dimension {dim}, larger than {d}")]
    ComplexTooLarge { dim: usize, d: usize },
    #[error("obstruction degree must be at least 1")]
    ZeroDegree,

    // files
    #[error("parse error: {0}")]
    Parse(String),
}

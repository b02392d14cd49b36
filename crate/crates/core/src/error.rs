use thiserror::Error;

/// Errors raised by constructions and verifications in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown simplex or cell `{0}`")]
    UnknownId(String),

    #[error("boundary of boundary is nonzero in degree {degree}")]
    NotAComplex { degree: usize },

    #[error("subcomplex is not closed under faces: face {face} of `{simplex}` is missing")]
    NotFaceClosed { simplex: String, face: usize },

    #[error("simplicial identity fails on `{simplex}`: {detail}")]
    SimplicialIdentity { simplex: String, detail: String },

    #[error("cubical identity fails on `{cell}`: {detail}")]
    CubicalIdentity { cell: String, detail: String },

    #[error("expected a simplicial set with exactly one vertex, found {0}")]
    NotOneVertex(usize),

    #[error("coalgebra is not connected (degree 0 has rank {0})")]
    NotConnected(usize),

    #[error("a word-length cutoff is required: {0}")]
    CutoffRequired(String),

    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("invalid necklace morphism: {0}")]
    InvalidMorphism(String),

    #[error("monoid table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),

    #[error("monoid table has no two-sided identity")]
    MissingIdentity,

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("malformed dg category: {0}")]
    DgCategory(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

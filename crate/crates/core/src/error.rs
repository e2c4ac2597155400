use thiserror::Error;

use crate::multifan::GenericVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Domain violations found by the
/// `validate*` functions are returned as data instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("multi-fan has no top-dimensional cones")]
    EmptyTopDimension,
    #[error("not pre-complete: d = {d1} at {v1} but d = {d2} at {v2}")]
    NotPreComplete {
        v1: GenericVector,
        d1: i64,
        v2: GenericVector,
        d2: i64,
    },
    #[error("invalid multi-fan: {0}")]
    InvalidMultiFan(String),
    #[error("face {0} is not a face of the multi-fan")]
    FaceNotPresent(String),
    #[error("no edge labelled {0:?}")]
    EdgeNotPresent(String),
    #[error("no chamber with id {0:?}")]
    ChamberNotPresent(String),
    #[error("neighbourhoods do not match: {0}")]
    NeighborhoodMismatch(String),
    #[error("weights are not opposite: {0}")]
    WeightMismatch(String),
    #[error("chamber {chamber:?} has no weight left on the {sign} side")]
    InsufficientWeight { chamber: String, sign: char },
    #[error("cones do not match: {0}")]
    ConeMismatch(String),
    #[error("search over {size} edges exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is empty")]
    Empty,
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("not Delzant: {0}")]
    NotDelzant(String),
    #[error("cut of depth {depth} reaches another vertex")]
    DepthTooLarge { depth: String },
    #[error("template is not oriented")]
    NotOriented,
    #[error("diamond precondition failed: {0}")]
    DiamondPreconditionFailed(String),
    #[error("facet {0} touches a folded facet")]
    NotNonFolded(String),
    #[error("host polytopes carry the same orientation")]
    SameOrientation,
    #[error("vertex {0} lies on a folded facet")]
    VertexOnFold(String),
    #[error("invalid template: {0}")]
    InvalidTemplate(String),
    #[error("sequence is not unimodular: {0}")]
    NotUnimodular(String),
    #[error("vector {0} is not primitive")]
    NonPrimitiveVector(String),
    #[error("no reduction relation found")]
    NoRelation,
    #[error("realization failed verification: {0}")]
    VerificationFailed(String),
    #[error("{0}")]
    Format(String),
}

impl Error {
    /// Stable variant name, used by the CLI when surfacing failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroVector => "ZeroVector",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptyTopDimension => "EmptyTopDimension",
            Error::NotPreComplete { .. } => "NotPreComplete",
            Error::InvalidMultiFan(_) => "InvalidMultiFan",
            Error::FaceNotPresent(_) => "FaceNotPresent",
            Error::EdgeNotPresent(_) => "EdgeNotPresent",
            Error::ChamberNotPresent(_) => "ChamberNotPresent",
            Error::NeighborhoodMismatch(_) => "NeighborhoodMismatch",
            Error::WeightMismatch(_) => "WeightMismatch",
            Error::InsufficientWeight { .. } => "InsufficientWeight",
            Error::ConeMismatch(_) => "ConeMismatch",
            Error::TooLarge { .. } => "TooLarge",
            Error::Unbounded => "Unbounded",
            Error::Empty => "Empty",
            Error::InvalidPolytope(_) => "InvalidPolytope",
            Error::NotDelzant(_) => "NotDelzant",
            Error::DepthTooLarge { .. } => "DepthTooLarge",
            Error::NotOriented => "NotOriented",
            Error::DiamondPreconditionFailed(_) => "DiamondPreconditionFailed",
            Error::NotNonFolded(_) => "NotNonFolded",
            Error::SameOrientation => "SameOrientation",
            Error::VertexOnFold(_) => "VertexOnFold",
            Error::InvalidTemplate(_) => "InvalidTemplate",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::NonPrimitiveVector(_) => "NonPrimitiveVector",
            Error::NoRelation => "NoRelation",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::Format(_) => "Format",
        }
    }
}

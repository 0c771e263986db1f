use alloc::string::String;

use crate::lot::TreeDefect;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid vertex id {0:?}: ids are nonempty strings over [A-Za-z0-9_]")]
    InvalidToken(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("undeclared vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("not a labeled oriented tree: {0}")]
    NotATree(TreeDefect),
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
    #[error("edge {0} is not of the form [a,a,b] or [b,a,a]")]
    NotCompressible(usize),
    #[error("edge {0} has no boundary endpoint that is absent from the edge labels")]
    NotBoundaryReducible(usize),
    #[error("edges {0} and {1} cannot be folded")]
    NotFoldable(usize, usize),
    #[error("invalid sub-LOT: {0}")]
    InvalidSubLot(String),
    #[error("sub-LOTs {0} and {1} overlap")]
    OverlappingSubLots(usize, usize),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unknown relator {0}")]
    UnknownRelator(usize),
    #[error("relator {0} is empty")]
    EmptyRelator(usize),
    #[error("sub-presentation {0} is not full")]
    NotFull(usize),
    #[error("sub-presentations {0} and {1} share a generator")]
    OverlappingSubPresentations(usize, usize),
    #[error("collapse classes {0} and {1} overlap")]
    OverlappingClasses(usize, usize),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid Gauss code: {0}")]
    InvalidGauss(String),
    #[error("trace does not replay: {0}")]
    TraceMismatch(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("axiom violation ({axiom}): witness {witness}")]
    AxiomViolation { axiom: String, witness: String },
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("face length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("{0} is not a codimension-one subface of {1}")]
    NotCodimOne(String, String),
    #[error("dimension unsupported: {0}")]
    DimensionUnsupported(String),
    #[error("not commutative: {0} vs {1}")]
    NotCommutative(String, String),
    #[error("edge mismatch: {0}")]
    EdgeMismatch(String),
    #[error("inconsistent endpoints: {0}")]
    InconsistentEndpoints(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("no valid partition for rows {0} and {1}")]
    NoValidPartition(usize, usize),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("missing adjunction data for {0}")]
    MissingAdjunctionData(String),
    #[error("parse error: {0}")]
    Parse(String),
}

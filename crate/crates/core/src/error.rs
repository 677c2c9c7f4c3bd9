use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("simplices {0} and {1} lie in different connected components")]
    Disconnected(u32, u32),
    #[error("unknown maximal simplex id {0}")]
    UnknownSimplex(u32),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("chain has a diagonal term where only gapped terms are allowed")]
    NotGapped,
    #[error("chain has a gapped term where only diagonal terms are allowed")]
    NotDiagonal,
    #[error("symbol chain uses a basis index other than the distinguished one")]
    NotReduced,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("local homology did not stabilize: {0}")]
    NotStabilized(String),
    #[error("random chain requested from an empty basis")]
    EmptyBasis,
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the polyhedral and algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("recession cones differ: {0:?} vs {1:?}")]
    RecessionMismatch(Vec<usize>, Vec<usize>),

    #[error("operation undefined on the empty polyhedron")]
    EmptyPolyhedron,

    #[error("unbounded input: {0}")]
    Unbounded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("shape violation: {0}")]
    Shape(String),

    #[error("result is not a lattice polyhedron: vertex {0}")]
    NonLattice(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("coordinate overflow")]
    Overflow,

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dim(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for errors caused by unreadable input rather than a violated
    /// mathematical precondition.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

use thiserror::Error;

/// Errors raised by the library. The CLI maps them onto exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("degenerate edge at {0}")]
    DegenerateEdge(String),

    #[error("invalid graph: {0}")]
    Invalid(String),

    #[error("non-planar: {0}")]
    NonPlanar(String),

    #[error("inner face of size {0}")]
    InnerFace(String),

    #[error("outer cycle not a cycle: {0}")]
    OuterCycle(String),

    #[error("distinguished edge not on outer cycle: {0}")]
    DistinguishedEdge(String),

    #[error("not a chord: {0}")]
    NotAChord(String),

    #[error("outer cycle has a chord {0}; split before peeling")]
    ChordPresent(String),

    #[error("base case: the triangle cannot be peeled")]
    BaseCase,

    #[error("invalid parameters: {0}")]
    Parameters(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size guard exceeded: {0}")]
    Budget(String),

    #[error("internal failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

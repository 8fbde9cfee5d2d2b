use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed root datum: {0}")]
    MalformedSpec(String),
    #[error("center is not connected: X/ZR has torsion (elementary divisors {0:?})")]
    CenterNotConnected(Vec<i64>),
    #[error("internal error: no integer sigma with <alpha, sigma> = 1 for all simple roots")]
    SigmaUnsolvable,
    #[error("subset {0} is not finitary")]
    NotFinitary(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("{0} is not minimal in its coset")]
    NotMinimalInCoset(String),
    #[error("coweight {0} is not dominant")]
    NotDominant(String),
    #[error("{0} is not minimal in its coset modulo W")]
    NotInWS(String),
    #[error("{0} is not restricted")]
    NotRestricted(String),
    #[error("{0} does not satisfy the double-coset minimality conditions")]
    NotInAWS(String),
    #[error("orbit labels have different space or flavor")]
    FlavorMismatch,
    #[error("invalid orbit label: {0}")]
    InvalidLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown verb: {0}")]
    UnknownVerb(String),
    #[error("unknown verification check: {0}")]
    UnknownLemma(String),
    #[error("box {requested} exceeds the configured maximum {max}")]
    BoxExceeded { requested: i64, max: i64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Usage-type errors map to exit code 1, domain errors to 2.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::UnknownVerb(_)
                | Error::UnknownLemma(_)
                | Error::Io(_)
                | Error::MalformedSpec(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cycle: {0} and {1} are distinct but comparable both ways")]
    Cycle(String, String),
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("space is not w-local: {0}")]
    NotWLocal(String),
    #[error("map is not order-preserving: {0} <= {1} but images are not comparable the same way")]
    NotMonotone(String, String),
    #[error("enumeration budget exceeded: needed {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("no pro-isomorphism certificate within depth {depth} (degree {degree})")]
    NoCertificateWithinDepth { depth: usize, degree: i64 },
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("sheaf presented on the wrong locus: {0}")]
    Locus(String),
    #[error("invalid stratification: {0}")]
    InvalidStratification(String),
    #[error("strata cannot be closure-ordered: {0}")]
    Order(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

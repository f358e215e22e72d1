use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("presentation mismatch")]
    PresentationMismatch,
    #[error("presentation not verified consistent")]
    NotConsistent,
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{what} budget exceeded ({needed} > {budget})")]
    Budget {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("subgroup is not central")]
    NotCentral,
    #[error("not X-invariant: functional is nonzero on X generator {0}")]
    NotXInvariant(usize),
    #[error("representation violates a relation: {0}")]
    RelationViolated(String),
    #[error("representation is not isotypic over the central character: {0}")]
    NotIsotypic(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("step limit exceeded during rewriting")]
    StepLimit,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: u128, budget: u128) -> Self {
        Error::Budget {
            what,
            needed,
            budget,
        }
    }
}

use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("element is not a member of the ambient group")]
    NotMember,

    #[error("subgroup is not contained in the ambient group")]
    NotSubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("{what} cap exceeded (limit {limit})")]
    CapExceeded { what: &'static str, limit: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

impl GroupError {
    pub fn cap(what: &'static str, limit: u64) -> Self {
        GroupError::CapExceeded { what, limit }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, GroupError::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, GroupError>;

use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("unsupported field: {0} is not a prime below 2^31")]
    UnsupportedField(u64),
    #[error("quiver has a directed cycle")]
    Cyclic,
    #[error("quiver must have at least one vertex")]
    EmptyQuiver,
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("representations live over different quivers")]
    QuiverMismatch,
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("not exceptional: {0}")]
    NotExceptional(String),
    #[error("generator is projective: {0}")]
    Projective(String),
    #[error("not in the perpendicular category: {0}")]
    NotPerpendicular(String),
    #[error("not a tilting module: {0}")]
    NotTilting(String),
    #[error("invalid exceptional sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid stratification tree: {0}")]
    InvalidTree(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_undecided(&self) -> bool {
        matches!(self, Error::Undecided(_))
    }
}

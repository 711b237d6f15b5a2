use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point set has odd size {0}")]
    OddPointCount(usize),

    #[error("no h-labeling: {reason}")]
    NoHLabeling { reason: String },

    #[error("no w-labeling: {reason}")]
    NoWLabeling { reason: String },

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("point set is not in wheel configuration")]
    NotWheelConfig,

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("tree is not a w-caterpillar: {0}")]
    NotWCaterpillar(String),

    #[error("cannot place tree on a convex chain: {0}")]
    NotPlaceable(String),

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("structure violation ({lemma}): {witness}")]
    StructureViolation { lemma: String, witness: String },

    #[error("edge {0}-{1} is not a halving line")]
    NotAHalvingLine(usize, usize),

    #[error("side violation: {0}")]
    SideViolation(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("no admissible {r}-halving fan line; candidates: {candidates:?}")]
    NoFanLine { r: usize, candidates: Vec<(usize, usize)> },

    #[error("invalid construction choices: {0}")]
    InvalidChoices(String),

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

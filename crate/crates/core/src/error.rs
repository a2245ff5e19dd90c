use thiserror::Error;

/// Errors raised by the protection library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: cannot parse node id from {token:?}")]
    Parse { line: usize, token: String },

    #[error("line {line}: expected at least two node ids")]
    ShortLine { line: usize },

    #[error("edge list contains no edges")]
    EmptyGraph,

    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(u64, u64),

    #[error("edge ({0}, {1}) is already in the graph")]
    DuplicateEdge(u64, u64),

    #[error("self-loop on node {0} is not a valid edge")]
    SelfLoop(u64),

    #[error("node {0} is not in the graph")]
    UnknownNode(u64),

    #[error("target ({0}, {1}) listed twice")]
    DuplicateTarget(u64, u64),

    #[error("target ({0}, {1}) is still present; remove targets before indexing")]
    TargetPresent(u64, u64),

    #[error("edge ({0}, {1}) is a target and cannot be used as a protector")]
    ProtectorIsTarget(u64, u64),

    #[error("edge ({0}, {1}) has already been deleted")]
    AlreadyDeleted(u64, u64),

    #[error("({0}, {1}) is not a target")]
    UnknownTarget(u64, u64),

    #[error("requested {requested} edges but only {available} are available")]
    NotEnoughEdges { requested: usize, available: usize },

    #[error("constant C = {given} is below the initial similarity {minimum}")]
    ConstantTooSmall { given: usize, minimum: usize },

    #[error("budget vector has {got} entries for {expected} targets")]
    BudgetLength { expected: usize, got: usize },

    #[error("exact search limited to {max_candidates} candidates and budget {max_budget}; got {candidates} candidates, budget {budget}")]
    InstanceTooLarge {
        candidates: usize,
        budget: usize,
        max_candidates: usize,
        max_budget: usize,
    },

    #[error("invalid value {value:?} for {what}")]
    InvalidValue { what: &'static str, value: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

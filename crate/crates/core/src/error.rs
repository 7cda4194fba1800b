use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge list is empty; use Tree::singleton for the one-vertex tree")]
    EmptyEdgeList,
    #[error("self loop at vertex {0}: adjacency must be irreflexive")]
    SelfLoop(u64),
    #[error("duplicate edge {0}-{1}: a tree has no parallel edges")]
    DuplicateEdge(u64, u64),
    #[error("edge {0}-{1} closes a cycle: a tree is acyclic")]
    CycleDetected(u64, u64),
    #[error("graph has {0} components: a tree is connected")]
    Disconnected(usize),
    #[error("vertex id {id} out of range for order {order}")]
    VertexOutOfRange { id: usize, order: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("index is undefined on the one-vertex tree")]
    SingletonTree,
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),
    #[error("maximum degree {found} exceeds the supported bound {limit}")]
    DegreeBoundViolated { found: usize, limit: usize },
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("order {n} exceeds the enumeration guard {limit}; raise the guard to proceed")]
    LimitExceeded { n: usize, limit: usize },
    #[error("solved census form disagrees with elimination: {0}")]
    TranscriptionMismatch(String),
    #[error("unreachable proof branch reached: {0}")]
    UnreachableBranch(String),
}

use crate::graph::Vertex;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("negative capacity {cap} on edge {u}-{v}")]
    NegativeCapacity { u: Vertex, v: Vertex, cap: i64 },
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("terminals must be four distinct vertices")]
    DuplicateTerminal,
    #[error("source and sink sets overlap")]
    OverlappingTerminals,
    #[error("requested flow value {requested} exceeds the maximum {max}")]
    ValueInfeasible { requested: i64, max: i64 },
    #[error("not a flow: {0}")]
    NotAFlow(String),
    #[error("no s1-t2 path shares a vertex with an s2-t1 path")]
    NotCrossing,
    #[error("requested values ({k1}, {k2}) violate k1 <= {tau1}, k2 <= {tau2}, k1 + k2 <= {tau}")]
    TargetsInfeasible { k1: i64, k2: i64, tau1: i64, tau2: i64, tau: i64 },
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("structure not recognised: {0}")]
    NotSeymourLike(String),
    #[error("unsupported generator class `{0}`")]
    UnknownClass(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

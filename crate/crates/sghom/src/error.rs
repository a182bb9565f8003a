use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0} is not allowed")]
    LoopEdge(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("tuple length {0} does not match sign vector length {1}")]
    LengthMismatch(usize, usize),
    #[error("repeated vertex {0} in tuple")]
    RepeatedVertex(usize),
    #[error("the two graphs have different underlying graphs")]
    UnderlyingMismatch,
    #[error("graph is not complete")]
    NotComplete,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("enumeration budget exceeded ({needed} > {budget})")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("no verified target found after {0} attempts")]
    ConstructionFailed(usize),
    #[error("chromatic number exceeds max order {0}")]
    MaxOrderExceeded(usize),
    #[error("map is not total or has an out-of-range image")]
    InvalidMap,
    #[error("graph is not {0}-degenerate")]
    NotDegenerate(usize),
    #[error("embedding stuck at vertex {vertex} after {backtracks} backtracks")]
    EmbedStuck { vertex: usize, backtracks: usize },
    #[error("graph must be connected")]
    NotConnected,
    #[error("graph is not {0}-regular")]
    NotRegular(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("certificate does not match its graph (digest mismatch)")]
    DigestMismatch,
    #[error("generator retry cap exceeded")]
    RetryCapExceeded,
    #[error("produced homomorphism failed re-verification")]
    VerificationFailed,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

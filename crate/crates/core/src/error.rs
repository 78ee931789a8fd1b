use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("invalid id `{0}`")]
    InvalidId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("non-composable relation `{second} {first}`")]
    NonComposableRelation { second: String, first: String },
    #[error("duplicate relation `{second} {first}`")]
    DuplicateRelation { second: String, first: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StringError {
    #[error("letter {0} and its successor do not compose")]
    NotComposable(usize),
    #[error("letter {0} is immediately undone by its successor")]
    ReducedPairViolation(usize),
    #[error("letter {0} and its successor form a relation")]
    RelationViolation(usize),
    #[error("empty word; use a lazy path")]
    Empty,
    #[error("cannot parse string literal: {0}")]
    Parse(String),
    #[error("interval {start}..{end} out of bounds for a string of length {len}")]
    OutOfBounds {
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("the algebra has bands; a length bound is required")]
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FringeError {
    #[error("quiver is not gentle: {0}")]
    NotGentle(String),
    #[error("generated fringe id `{0}` collides with an existing id")]
    NameCollision(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TiltingError {
    #[error("infinite type: band {0}")]
    InfiniteType(String),
    #[error("kisses go both ways between {0} and {1}")]
    BidirectionalKiss(String, String),
    #[error("census mismatch at arrow {arrow}: {detail}")]
    CensusMismatch { arrow: String, detail: String },
    #[error("Mc walk from arrow {0} exceeded its step bound")]
    WalkBound(String),
    #[error("{0} is projective")]
    YIsProjective(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    String(#[from] StringError),
    #[error(transparent)]
    Fringe(#[from] FringeError),
    #[error(transparent)]
    Tilting(#[from] TiltingError),
}

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid bounding box ({x1}, {y1}, {x2}, {y2})")]
    InvalidBox { x1: f64, y1: f64, x2: f64, y2: f64 },
    #[error("frames per second must be positive, got {0}")]
    InvalidFps(f64),
    #[error("empty video")]
    EmptyVideo,
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("node {node}: feature dimension {got}, expected {expected}")]
    DimMismatch { node: usize, expected: usize, got: usize },
    #[error("node {node}: non-finite feature value")]
    NonFiniteFeature { node: usize },
    #[error("graph density needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("undefined AP: no positive labels")]
    UndefinedAp,
    #[error("empty input")]
    EmptyInput,
    #[error("graph is not fully labeled")]
    Unlabeled,
    #[error("no labeled graphs to train on")]
    NoLabeledGraphs,
    #[error("total reference speech is zero")]
    NoReferenceSpeech,
    #[error("reference word sequence is empty")]
    EmptyReference,
    #[error("too many speakers for optimal mapping: {0}")]
    TooManySpeakers(usize),
}

pub type Result<T> = core::result::Result<T, Error>;

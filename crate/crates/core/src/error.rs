use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} outside the supported range 1..={1}")]
    DegreeOutOfRange(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("invalid transposition ({0} {1}) in degree {2}")]
    InvalidTransposition(usize, usize, usize),
    #[error("expected a transposition of S4, got degree {0}")]
    NotS4(usize),
    #[error("label {0} out of range 1..={1}")]
    LabelOutOfRange(usize, usize),
    #[error("strand count mismatch: word on {word} strands, coloring has {points} points")]
    StrandMismatch { word: usize, points: usize },
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("malformed index set: {0}")]
    MalformedIndexSet(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("coloring is disconnected")]
    Disconnected,
    #[error("word is not liftable over the given coloring")]
    NotLiftable,
    #[error("orbit exceeded the cap of {0} vertices")]
    CapExceeded(usize),
    #[error("generator {0} does not act as an involution on the orbit")]
    NonInvolutive(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("colored braids have different endpoints")]
    ColoringMismatch,
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("quotient lattice has torsion ({0}); the relation set is inconsistent")]
    Torsion(String),
    #[error("move {0} is not available at width {1}")]
    MoveWidth(String, usize),
    #[error("move data rejected: {0}")]
    MoveData(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

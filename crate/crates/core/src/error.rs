use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("edge `{0}` declared twice")]
    DuplicateEdge(String),
    #[error("edge `{edge}` has colour {colour}, outside 1..={k}")]
    InvalidColour { edge: String, colour: usize, k: usize },
    #[error("square ({}) is malformed: {reason}", .entry.join(", "))]
    MalformedSquare { entry: Vec<String>, reason: &'static str },
    #[error("no square covers the word {}", .word.join(" "))]
    IncompleteSquares { word: Vec<String> },
    #[error("the word {} is covered by more than one square", .word.join(" "))]
    DuplicateSquare { word: Vec<String> },
    #[error("the two rewritings of {} disagree", .word.join(" "))]
    CubeInconsistency { word: Vec<String> },
    #[error("cannot compose {left} with {right}")]
    NotComposable { left: String, right: String },
    #[error("degree segment out of range")]
    DegreeOutOfRange,
    #[error("face index {index} out of range for a cube of rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("construction would produce an infinite graph")]
    InfiniteResult,
    #[error("edge values are not functorial on square ({})", .square.join(", "))]
    InvalidFunctor { square: Vec<String> },
    #[error("invalid pullback matrix: {0}")]
    InvalidMatrix(String),
    #[error("vertex `{vertex}` receives no edge of colour {colour}")]
    HasSources { vertex: String, colour: usize },
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("unsupported coefficients {0}")]
    UnsupportedCoefficients(String),
    #[error("coefficient groups differ: {0} and {1}")]
    CoefficientMismatch(String, String),
    #[error("objects live over different graphs")]
    GraphMismatch,
    #[error("extensions have different bases or fibres")]
    BaseMismatch,
    #[error("elements lie over different morphisms")]
    FibreMismatch,
    #[error("element does not belong to this extension")]
    ForeignElement,
    #[error("block at `{vertex}` is invalid: {reason}")]
    InvalidBlock { vertex: String, reason: &'static str },
    #[error("value `{0}` is not an element of {1}")]
    BadValue(String, String),
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("face index {index} out of range for a simplex of dimension {dim}")]
    FaceIndex { index: usize, dim: usize },
    #[error("degeneracy index {index} out of range for a simplex of dimension {dim}")]
    DegeneracyIndex { index: usize, dim: usize },
    #[error("vertex position {position} out of range for a simplex of dimension {dim}")]
    VertexPosition { position: usize, dim: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown builtin complex `{0}` (expected sphere:N, wedge:N, boundary-simplex:N, simplex:N, wedge-aab or facets:PATH)")]
    UnknownBuiltin(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{name}` of dimension {dim} needs {expected} faces, got {got}")]
    FaceCount {
        name: String,
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("face {index} of `{name}` has dimension {got}, expected {expected}")]
    FaceDimension {
        name: String,
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("presentation already contains formal inverses")]
    AlreadyExtended,
    #[error("basepoint missing or not a vertex")]
    Basepoint,
    #[error("malformed facet list: {0}")]
    MalformedFacets(String),
    #[error("`{left}` and `{right}` are not composable")]
    NotComposable { left: String, right: String },
    #[error("endpoint mismatch: expected `{expected}`, found `{found}`")]
    EndpointMismatch { expected: String, found: String },
    #[error("only words of degree-0 letters are invertible")]
    NotInvertible,
    #[error("coordinate {index} out of range 1..={max}")]
    CoordinateOutOfRange { index: usize, max: usize },
    #[error("the basis is infinite (the complex has nondegenerate 1-simplices); give a maximal word length")]
    UnboundedEnumeration,
    #[error("cube cell is not augmented")]
    NotAugmented,
    #[error("invalid cube cell: {0}")]
    InvalidCubeCell(String),
    #[error("chains differ in variant, ring or degree")]
    ChainMismatch,
    #[error("coefficient {0} is not in the ring {1}")]
    Coefficient(String, String),
    #[error("extended cobar construction needs a single vertex, found {0}")]
    NotSingleVertex(usize),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

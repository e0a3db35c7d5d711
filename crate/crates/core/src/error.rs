use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero vector cannot represent a state")]
    ZeroVector,

    #[error("empty vector")]
    EmptyVector,

    #[error("tolerance must lie in (0, 1), got {0}")]
    InvalidTolerance(f64),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: residual {0:.3e}")]
    NotHermitian(f64),

    #[error("matrix is not idempotent: residual {0:.3e}")]
    NotIdempotent(f64),

    #[error("context is empty")]
    EmptyContext,

    #[error("context members {0} and {1} are not orthogonal")]
    NonOrthogonal(usize, usize),

    #[error("context projectors do not sum to the identity: residual {0:.3e}")]
    IncompleteResolution(f64),

    #[error("context member {0} is the zero or identity projector")]
    TrivialMember(usize),

    #[error("context has {0} members; blocks are generated for at most {max} members", max = crate::contexts::MAX_BLOCK_GENERATORS)]
    BlockTooLarge(usize),

    #[error("cannot paste an empty list of blocks")]
    EmptyPasting,

    #[error("atom `{0}` is not an element of any block")]
    UnresolvableAtom(String),

    #[error("degree {0} lies outside [0, 1]")]
    DegreeOutOfRange(f64),

    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },

    #[error("context on line {line} is not orthogonal: rays `{first}` and `{second}`")]
    NonOrthogonalContext {
        line: usize,
        first: String,
        second: String,
    },

    #[error("line {line}: ray `{id}` duplicates ray `{existing}`")]
    DuplicateRay {
        line: usize,
        id: String,
        existing: String,
    },

    #[error("formula error at column {column}: {message}")]
    FormulaParse { column: usize, message: String },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("invalid argument `{token}`: {message}")]
    InvalidArgument { token: String, message: String },

    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

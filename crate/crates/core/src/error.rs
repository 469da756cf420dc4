use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("paths cannot be composed: {0}")]
    NotComposable(String),
    #[error("relation terms are not parallel: {0}")]
    NonParallel(String),
    #[error("relation is not length-homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("deleting every vertex leaves the zero algebra")]
    EmptyAlgebra,
    #[error("algebra is infinite-dimensional (no empty degree up to {0})")]
    InfiniteDimensional(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid string: {0}")]
    InvalidWord(String),
    #[error("module is decomposable")]
    Decomposable,
    #[error("irreducible map multiplicity {multiplicity} between modules {from} and {to} is not supported")]
    MultiplicityUnsupported {
        from: usize,
        to: usize,
        multiplicity: usize,
    },
    #[error("module list is incomplete: {0}")]
    ClosureIncomplete(String),
    #[error("quiver does not embed into a grid")]
    NotPds,
    #[error("invalid gluing spec: {0}")]
    InvalidSpec(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("search truncated in both directions; cannot decide")]
    Indeterminate,
    #[error("no endomorphism with a rational eigenvalue splits the module")]
    SplitFailed,
    #[error("dimension law violated: presented algebra has dimension {presented}, Hom sum is {hom_sum}")]
    DimensionLaw { presented: usize, hom_sum: usize },
}

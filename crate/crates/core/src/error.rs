use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("simplex {simplex} listed twice with conflicting orientation")]
    ConflictingOrientation { simplex: String },

    #[error("not a closed manifold: {0}")]
    NotManifold(String),

    #[error("not orientable: {0}")]
    NonOrientable(String),

    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),

    #[error("subcomplex {0} is not full; barycentric subdivision makes it full")]
    NotFull(String),

    #[error("map is not order-compatible on simplex {simplex}; try find_compatible_orders or subdivide the domain")]
    OrderIncompatible { simplex: String },

    #[error("vertex map is not simplicial: image of {simplex} is not a simplex")]
    NonSimplicial { simplex: String },

    #[error("unsatisfiable order constraints along cycle {0}")]
    OrderCycle(String),

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: isize, max: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("group has torsion {0:?}; integral inversion is undefined here")]
    Torsion(Vec<String>),

    #[error("linear system has no integral solution: {0}")]
    NoSolution(String),

    #[error("coincidence set is not a subcomplex after {rounds} refinement rounds (offending simplex {simplex})")]
    SubdivisionBound { rounds: usize, simplex: String },

    #[error("(g - f) vanishes on the boundary of the cell around {0}; subdivide the domain")]
    BoundaryTouchesCoincidence(String),

    #[error("no chart covers the images around {0}")]
    NoChart(String),

    #[error("unsupported component {component}: {reason}")]
    Unsupported { component: String, reason: String },

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("unknown example {0}")]
    UnknownExample(String),
}

impl Error {
    /// Parse failures versus violated preconditions, for callers that need to tell them apart.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

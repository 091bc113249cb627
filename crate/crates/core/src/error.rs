use thiserror::Error;

/// Everything that can go wrong in a computation.
///
/// [`Error::kind`] gives a stable machine-readable tag, used by the CLI for
/// its JSON error output.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("form is degenerate")]
    Degenerate,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("expected integral entries: {0}")]
    NotIntegral(String),
    #[error("unknown or invalid lattice name: {0}")]
    InvalidName(String),
    #[error("vector or sublattice is not primitive")]
    NotPrimitive,
    #[error("vector or plane is not isotropic")]
    NotIsotropic,
    #[error("input is zero")]
    ZeroInput,
    #[error("finite group too large: order {order} exceeds {bound}")]
    TooLarge { order: u64, bound: u64 },
    #[error("sublattice is not contained in the larger lattice")]
    NotContained,
    #[error("ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("subgroup is not isotropic: generators {0} and {1} pair to {2}")]
    IntegralityViolation(usize, usize, String),
    #[error("quadratic values are required but missing")]
    MissingQuadratic,
    #[error("no projective frame among the columns")]
    NoFrame,
    #[error("pair vertices are collinear")]
    VerticesCollinear,
    #[error("rank deficient: expected {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },
    #[error("missing label: {0}")]
    MissingLabel(String),
    #[error("quadric system is not smooth (dependent columns {0:?})")]
    SmoothnessRequired(Vec<usize>),
    #[error("zero column {0}")]
    ZeroColumn(usize),
    #[error("lines {0} and {1} coincide")]
    CoincidentLines(usize, usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::Singular => "Singular",
            Error::Degenerate => "Degenerate",
            Error::NotSymmetric => "NotSymmetric",
            Error::NotIntegral(_) => "NotIntegral",
            Error::InvalidName(_) => "InvalidName",
            Error::NotPrimitive => "NotPrimitive",
            Error::NotIsotropic => "NotIsotropic",
            Error::ZeroInput => "ZeroInput",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotContained => "NotContained",
            Error::RankMismatch(..) => "RankMismatch",
            Error::IntegralityViolation(..) => "IntegralityViolation",
            Error::MissingQuadratic => "MissingQuadratic",
            Error::NoFrame => "NoFrame",
            Error::VerticesCollinear => "VerticesCollinear",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::MissingLabel(_) => "MissingLabel",
            Error::SmoothnessRequired(_) => "SmoothnessRequired",
            Error::ZeroColumn(_) => "ZeroColumn",
            Error::CoincidentLines(..) => "CoincidentLines",
            Error::Invalid(_) => "Invalid",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

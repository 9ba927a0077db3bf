use thiserror::Error;

use crate::complex::IndexSubset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count must be positive")]
    ZeroVertices,
    #[error("vertex {vertex} out of range 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("complexes are limited to {max} vertices (got {m})")]
    TooManyVertices { m: usize, max: usize },
    #[error("face {face} is not in the complex")]
    FaceNotInComplex { face: IndexSubset },
    #[error("skeleton dimension {q} out of range for {m} vertices")]
    SkeletonOutOfRange { m: usize, q: isize },
    #[error("exhaustive labeling search is limited to {bound} vertices (got {m}); supply a labeling")]
    SearchBoundExceeded { m: usize, bound: usize },
    #[error("labeling is not a permutation of 1..={m}")]
    InvalidLabeling { m: usize },

    #[error("boundary does not square to zero in degree {degree}")]
    BoundaryNotSquareZero { degree: isize },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("non-selected cells do not span a subcomplex (cell {cell} in degree {degree})")]
    NotASubcomplex { degree: isize, cell: usize },
    #[error("integer does not fit the output type: {0}")]
    Overflow(String),

    #[error("invalid pair model: {0}")]
    InvalidPair(String),
    #[error("expected {expected} pair models, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("product has {cells} cells, over the budget of {budget}")]
    BudgetExceeded { cells: u128, budget: usize },
    #[error("subset enumeration is limited to {bound} vertices (got {m})")]
    EnumerationBoundExceeded { m: usize, bound: usize },
    #[error("pair {index} ({name}) has no certified null-homotopic inclusion")]
    PairNotCertified { index: usize, name: String },
    #[error("complex is not shifted")]
    NotShifted,
    #[error("full subcomplex on {subset} has torsion in a shifted complex")]
    TorsionInShiftedSubcomplex { subset: IndexSubset },
    #[error("chain construction left its support: {0}")]
    SupportClosure(String),

    #[error("series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("denominator has zero constant term")]
    ZeroDenominatorConstant,
    #[error("series expansion is not integral")]
    NonIntegralExpansion,
    #[error("generator degree must be positive")]
    InvalidDegree,

    #[error("complex is not pure of dimension {expected}")]
    NotPure { expected: isize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("(1-t^2)^n times the Hilbert series is not a polynomial")]
    NonpolynomialQuotient,
    #[error("h-vector has a negative entry: {0:?}")]
    NegativeHVector(Vec<i64>),
    #[error("characteristic matrix is invalid: {0}")]
    InvalidCharacteristic(String),
    #[error("characteristic matrix has column rank {rank} < {n}")]
    RankDeficient { rank: usize, n: usize },

    #[error("{}{message}", location.as_ref().map(|l| format!("{l}: ")).unwrap_or_default())]
    Parse { location: Option<String>, message: String },
}

impl Error {
    pub(crate) fn parse(line: Option<usize>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: line.map(|l| format!("line {l}")),
            message: message.into(),
        }
    }

    /// Prefixes a parse error with the file it came from.
    pub fn in_file(self, path: &str) -> Self {
        match self {
            Error::Parse { location, message } => Error::Parse {
                location: Some(match location {
                    Some(l) => format!("{path}:{}", l.trim_start_matches("line ")),
                    None => path.to_string(),
                }),
                message,
            },
            other => other,
        }
    }
}

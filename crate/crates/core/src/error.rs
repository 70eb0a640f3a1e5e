use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(usize),
    #[error("genus {0} exceeds the supported maximum of 32")]
    GenusUnsupported(usize),
    #[error("at least one marked point is required")]
    NoMarkedPoints,
    #[error("kappa sum {sum} does not equal 2g-2 = {expected}")]
    KappaSum { sum: i64, expected: i64 },
    #[error("dimension mismatch: expected {expected}, got {got} ({what})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("arc winding entry {index} must be odd (doubled half-integer), got {value}")]
    EvenArcWinding { index: usize, value: i64 },
    #[error("arc winding data is required when n >= 2")]
    MissingArcData,
    #[error("some kappa entry is odd: no classical spin structure")]
    SomeKappaOdd,
    #[error("point-push letters cannot act on a framing carrying arc data")]
    PointPushOnArcs,
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("twist power must be nonzero")]
    ZeroPower,
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("marked point index {index} out of range 1..={n}")]
    PointIndex { index: usize, n: usize },
    #[error("transvection factors do not multiply to the given matrix")]
    FactorizationMismatch,
    #[error("surface data mismatch between inputs")]
    SpecMismatch,
    #[error("Arf invariants differ")]
    ArfMismatch,
    #[error("q-vectors differ at basis position {0}")]
    QVectorMismatch(usize),
    #[error("winding parity of v is odd and every kappa entry is even: no lift exists")]
    NoLiftExists,
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("exhaustive enumeration supports g <= {max}, got {g}")]
    GenusTooLarge { g: usize, max: usize },
    #[error("exhaustive enumeration supports n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

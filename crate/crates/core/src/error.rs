use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field degree must be positive")]
    ZeroDegree,
    #[error("modulus polynomial is required when e > 1")]
    MissingModulus,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus polynomial is reducible over GF({0})")]
    ReduciblePolynomial(u64),
    #[error("field order {0} is too large")]
    FieldTooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("cyclotomic operands use different primes ({0} and {1})")]
    PrimeMismatch(u32, u32),
    #[error("invalid field element: {0}")]
    InvalidElement(String),

    #[error("cover relations contain a cycle through {0}")]
    CycleDetected(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("ground sets overlap at {0}")]
    OverlappingGroundSets(String),
    #[error("poset is not a linear order")]
    NotLinearOrder,
    #[error("operands live on different posets")]
    PosetMismatch,

    #[error("arc {0} -> {1} joins elements that are not strictly ordered")]
    ArcNotComparable(String, String),
    #[error("arc {0} -> {1} has label zero")]
    ZeroLabel(String, String),
    #[error("partition condition violated by ({0}, {1}, {2})")]
    PartitionConditionViolated(String, String, String),
    #[error("more than one arc joins {0} and {1}")]
    DuplicateArc(String, String),
    #[error("diagram is not nonnesting")]
    NotNonnesting,

    #[error("group has {size} elements, above the limit {limit}")]
    GroupTooLarge { size: String, limit: u64 },
    #[error("ground set of size {size} exceeds the limit {limit}")]
    GroundSetTooLarge { size: usize, limit: usize },
    #[error("({0}) is not a partition of the ground set")]
    NotAPartition(String),
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("map is not a bijection of the ground set: {0}")]
    NotABijection(String),
    #[error("function is not constant on superclass {0}")]
    NotSuperclassFunction(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

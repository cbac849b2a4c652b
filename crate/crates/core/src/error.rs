use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty arrangement table")]
    EmptyTable,
    #[error("duplicate point `{point}` within line `{line}`")]
    DuplicatePointInLine { line: String, point: String },
    #[error("lines `{a}` and `{b}` share more than one point")]
    LinesShareTwoPoints { a: String, b: String },
    #[error("table row has {got} cells but the header names {expected} lines")]
    RowTooWide { got: usize, expected: usize },
    #[error("line index {0} out of range")]
    LineIndexOutOfRange(usize),
    #[error("{{{a}, {b}}} is not a double point of the arrangement")]
    NotADouble { a: usize, b: usize },
    #[error("extension members {{{a0}, {a1}}} and {{{b0}, {b1}}} share a line")]
    ExtensionSharesLine { a0: usize, a1: usize, b0: usize, b1: usize },
    #[error("double point {{{a}, {b}}} carries no catalog label")]
    UnlabeledDouble { a: usize, b: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("point `{0}` lies on fewer than three lines")]
    UnderincidentPoint(String),
    #[error("polynomial arity or variable-set mismatch")]
    ArityMismatch,
    #[error("zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("Newton polytopes are only supported up to arity 3, got {0}")]
    ArityTooLarge(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree {0} exceeds the factorization bound")]
    DegreeBoundExceeded(usize),
    #[error("polynomial parse error: {0}")]
    PolyParse(String),
    #[error("construction plan error: {0}")]
    Plan(String),
    #[error("group element does not stabilize the extension set")]
    UnstableAction,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

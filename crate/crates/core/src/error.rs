use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at evaluation point {0}")]
    PoleAtPoint(String),
    #[error("cannot evaluate a Laurent polynomial at s = 0")]
    ZeroBase,
    #[error("span of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("rational function is not a Laurent polynomial: {0}")]
    NotLaurent(String),
    #[error("Laurent polynomial has non-integral coefficients: {0}")]
    NotIntegral(String),
    #[error("odd power of t^(1/2) in {0}; cannot evaluate at a value of t")]
    OddExponent(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("row and column index sets differ in size ({rows} vs {cols})")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("grade {grade} out of range 0..={max}")]
    BadGrade { grade: usize, max: usize },
    #[error("bottom-right block of the block matrix is singular")]
    SingularL,

    #[error("syntax error in braid word: {0}")]
    Syntax(String),
    #[error("generator {generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: i64, strands: usize },
    #[error("zero is not a braid generator")]
    ZeroGenerator,

    #[error("closure is not a string link: closed component through arc positions {cycle:?}")]
    NotStringLink { cycle: Vec<usize> },
    #[error("grading violation: {0}")]
    GradingViolation(String),
    #[error("no string link found after {0} attempts")]
    ExhaustedRetries(usize),
    #[error("no braid word found: {0}")]
    NotFound(String),
    #[error("unknown strategy '{name}' (available: {available})")]
    UnknownStrategy { name: String, available: String },
}

pub type Result<T> = std::result::Result<T, Error>;

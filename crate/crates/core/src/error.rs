use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: coefficients are unknown past t^{0}")]
    PrecisionExhausted(i64),
    #[error("exponent {exponent} is not below the precision bound {prec}")]
    ExponentBeyondPrecision { exponent: i64, prec: i64 },
    #[error("element is not in the valuation ring")]
    NotInValuationRing,
    #[error("hensel precondition failed: {0}")]
    HenselPreconditionFailed(&'static str),
    #[error("residue root is invalid: rho^n differs from res(a)")]
    ResidueRootInvalid,
    #[error("element is not a unit (valuation {0})")]
    NotAUnit(i64),
    #[error("zero element has no valuation class")]
    ZeroElement,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("formula is not res-cofinite")]
    NotResCofinite,
    #[error("formula mentions u{0}, which belongs to the generic tuple")]
    VariableLeak(usize),
    #[error("matrix is not in GL(n, O): determinant has valuation {0}")]
    NotInvertibleInGl(String),
    #[error("residue matrix is singular")]
    SingularResidueMatrix,
    #[error("perturbation entry has valuation {0}, residue would change")]
    ResidueChanged(String),
    #[error("arity mismatch: expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("formula has more than one variable")]
    Multivariate,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Syntax error with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

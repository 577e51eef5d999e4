use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("{0} is undefined for the zero element")]
    ZeroInput(&'static str),
    #[error("division is not exact")]
    InexactDivision,
    #[error("polynomial is not a square over the supported coefficient tower")]
    NotASquare,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("expected a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("valuation is not uniform across the place bundle {0}")]
    NonUniformBundle(String),
    #[error("place bundle {0} neither divides nor is coprime to the radicand")]
    BundleNotAligned(String),
    #[error("valuation of a mixed element depends on the sheet above {0}")]
    SheetDependent(String),
    #[error("elements live over different radicands")]
    RadicandMismatch,
    #[error("element is not of the form r*sqrt(D)^e")]
    NotPureElement,
    #[error("sequence has no dominant root: {0}")]
    NoDominantRoot(String),
    #[error("index {n} is below the degree-law threshold n0 = {n0}")]
    BelowThreshold { n: u64, n0: u64 },
    #[error("n + C7 = {0} must be positive")]
    NonPositiveShift(i64),
    #[error("degree law violated at n = {n}: law gives {law}, actual {actual}")]
    DegreeLawViolated { n: u64, law: i64, actual: String },
    #[error("sequence value at index {0} is not a polynomial")]
    NonPolynomialValue(u64),
    #[error("theorem hypotheses fail: {0}")]
    HypothesesFail(String),
    #[error("invalid indices: {0}")]
    InvalidIndices(String),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("elements are linearly dependent over the constants")]
    LinearlyDependent,
    #[error("place set S is missing a required {kind} at {place}")]
    MissingPlace { kind: String, place: String },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

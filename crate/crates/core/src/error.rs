use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in the library.
///
/// Variants are grouped roughly by the layer that raises them. Mathematical
/// "no" answers (a sequence that is not regular, a search that finds nothing)
/// are reported as values, not as errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // generator sets and elements
    #[error("generator `{name}` has degree {degree}; degrees must be at least 2")]
    DegreeTooSmall { name: String, degree: u32 },
    #[error("generator `{0}` is declared twice")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("elements live over different generator sets")]
    GeneratorSetMismatch,

    // model validation
    #[error("d({generator}) must have degree {expected}, found {found}")]
    DegreeMismatch {
        generator: String,
        expected: u32,
        found: String,
    },
    #[error("d({0}) has a term of word length < 2; the model is not minimal")]
    NotMinimal(String),
    #[error("d(d({0})) is not zero")]
    DifferentialNotSquareZero(String),
    #[error("killing `{0}` does not generate a differential ideal")]
    NotDifferentialIdeal(String),
    #[error("d({generator}) = {image} leaves the kept generators")]
    NotClosedUnderDifferential { generator: String, image: String },

    // ideal computations
    #[error("polynomial ideal operations need purely even elements, got {0}")]
    OddGeneratorPresent(String),
    #[error("ideal quotient by the zero element")]
    QuotientByZero,
    #[error("{0} has a nonzero constant term")]
    ConstantTerm(String),
    #[error("the quotient ring is infinite-dimensional")]
    InfiniteQuotient,

    // structural hypotheses
    #[error("the model is not pure")]
    NotPure,
    #[error("the model is not elliptic")]
    NotElliptic,
    #[error("the differential does not have constant length (word lengths {0:?})")]
    NonConstantLength(Vec<u32>),
    #[error("{generator}^{exponent} is not exact")]
    NotExact { generator: String, exponent: u32 },
    #[error("`{0}` is not an even generator")]
    NotEvenGenerator(String),

    // extension search
    #[error("no homogeneous regular subset found in the first stage")]
    SearchExhausted,
    #[error("search space exceeds the cap of {0} candidates")]
    SearchSpaceTooLarge(usize),
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    // bounds
    #[error("the pure sub-model is not closed under d: {0}")]
    SubModelNotClosed(String),
    #[error("the sub-model is not pure")]
    SubModelNotPure,
    #[error("the sub-model must contain every even generator, missing {0:?}")]
    EvenMismatch(Vec<String>),

    // model text
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

impl Error {
    /// True for errors that say the input does not satisfy a mathematical
    /// hypothesis, as opposed to malformed input or internal failures.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::NotPure
                | Error::NotElliptic
                | Error::NonConstantLength(_)
                | Error::NotExact { .. }
                | Error::InfiniteQuotient
                | Error::SubModelNotClosed(_)
                | Error::SubModelNotPure
                | Error::EvenMismatch(_)
        )
    }

    /// True for failures of the library's own post-condition checks.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::VerificationFailed(_) | Error::SearchExhausted)
    }

    /// Stable kebab-case identifier for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegreeTooSmall { .. } => "degree-too-small",
            Error::DuplicateGenerator(_) => "duplicate-generator",
            Error::UnknownGenerator(_) => "unknown-generator",
            Error::GeneratorSetMismatch => "generator-set-mismatch",
            Error::DegreeMismatch { .. } => "degree-mismatch",
            Error::NotMinimal(_) => "not-minimal",
            Error::DifferentialNotSquareZero(_) => "differential-not-square-zero",
            Error::NotDifferentialIdeal(_) => "not-differential-ideal",
            Error::NotClosedUnderDifferential { .. } => "not-closed",
            Error::OddGeneratorPresent(_) => "odd-generator-present",
            Error::QuotientByZero => "quotient-by-zero",
            Error::ConstantTerm(_) => "constant-term",
            Error::InfiniteQuotient => "infinite-quotient",
            Error::NotPure => "not-pure",
            Error::NotElliptic => "not-elliptic",
            Error::NonConstantLength(_) => "non-constant-length",
            Error::NotExact { .. } => "not-exact",
            Error::NotEvenGenerator(_) => "not-even-generator",
            Error::SearchExhausted => "search-exhausted",
            Error::SearchSpaceTooLarge(_) => "search-space-too-large",
            Error::VerificationFailed(_) => "verification-failed",
            Error::SubModelNotClosed(_) => "sub-model-not-closed",
            Error::SubModelNotPure => "sub-model-not-pure",
            Error::EvenMismatch(_) => "even-mismatch",
            Error::Syntax { .. } => "syntax",
        }
    }
}

use thiserror::Error;

/// Crate-wide error type. Degradation is loud: every cap and precondition
/// violation surfaces as a distinct variant instead of silent sampling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cardinality {got} exceeds cap {cap}")]
    CapExceeded { got: usize, cap: usize },
    #[error("element set is not a two-sided ideal")]
    NotAnIdeal,
    #[error("element {0} is not a central idempotent")]
    NotCentralIdempotent(String),
    #[error("malformed finite-support table: {0}")]
    MalformedTable(String),
    #[error("ideal is not alpha-invariant")]
    NotAlphaInvariant,
    #[error("morphism is not injective")]
    NotInjective,
    #[error("coefficient {coeff} at degree {degree} lies outside its domain ideal")]
    CoefficientOutsideDomainIdeal { degree: i64, coeff: String },
    #[error("series belong to different ring handles")]
    HandleMismatch,
    #[error("decomposition invalid at degree {0}: v_i != v_0 * a_i")]
    DecompositionInvalid(i64),
    #[error("action does not have a finite-support presentation")]
    NotFiniteSupport,
    #[error("ideal is the whole ring (proper ideal required)")]
    NotProper,
    #[error("right ideal is not simple")]
    NotSimple,
    #[error("base ring is not semiprime")]
    NotSemiprime,
    #[error("action carries no enveloping (restricted-global) data")]
    NoEnvelopingData,
    #[error("unknown check id: {0}")]
    UnknownCheck(String),
    #[error("fixture incompatible with check {check}: {reason}")]
    IncompatibleFixture { check: String, reason: String },
    #[error("search budget exceeded after scanning {scanned} fixtures")]
    BudgetExceeded { scanned: usize },
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

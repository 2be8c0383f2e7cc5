use exactnum::ExactError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OtError {
    #[error("polynomial is not irreducible over Q")]
    NotIrreducible,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("embedding index {index} out of range (field has {count} embeddings up to conjugation)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("generator {0} is not a unit")]
    NotUnit(usize),
    #[error("generator {0} is not totally positive")]
    NotTotallyPositive(usize),
    #[error("unit group is not admissible: {0}")]
    NotAdmissible(String),
    #[error("expected {expected} generators, got {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("precision exhausted at {bits} bits: {what}")]
    PrecisionExhausted { bits: u32, what: String },
    #[error("column {column} of Re C does not sum to -1/2")]
    ColumnSumViolation { column: usize },
    #[error("matrix C is not of LCK type (Re c_ij != -1/(2t))")]
    NotLckOtLike,
    #[error("d(omega) is not of the form theta ^ omega")]
    NoLeeCandidate,
    #[error("assumption failed: {0}")]
    AssumptionFailure(String),
    #[error("structure is not LCK: {0}")]
    NotLck(String),
    #[error("Lie algebra is not unimodular")]
    NotUnimodular,
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("generator {0} does not have determinant +1")]
    NonUnimodularDet(usize),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("signature violates s <= t (s = {s}, t = {t})")]
    SignatureViolation { s: usize, t: usize },
    #[error("generator {0} does not stabilize the module")]
    NonIntegerAction(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl OtError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        OtError::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, OtError>;

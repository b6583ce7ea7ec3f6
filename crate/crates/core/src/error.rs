use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no square-free decomposition")]
    ZeroInput,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0} is not a square-free integer")]
    NotSquarefree(i64),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("target is not in the Q-span of the powers of alpha")]
    NotRepresentable,

    #[error("√{0} does not lie in the field")]
    UnknownRadical(String),

    #[error("expected subfield index {expected}, found {found}")]
    WrongIndex { expected: u32, found: u32 },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("polynomial is reducible: {0}")]
    Reducible(String),

    #[error("field is not Galois: only {0} of 4 roots lie in Q[x]/(p)")]
    NotGalois(usize),

    #[error("element is not primitive")]
    NotPrimitive,

    #[error("singular curve: {0}")]
    SingularCurve(String),

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("curve has no (a, A, B) provenance")]
    MissingProvenance,

    #[error("point is 2-torsion")]
    TwoTorsionPoint,

    #[error("identity does not hold: {0}")]
    IdentityViolated(String),

    #[error("certificate verification failed: {0}")]
    VerificationFailed(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

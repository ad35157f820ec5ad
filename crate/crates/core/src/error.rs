use thiserror::Error;

/// Errors raised anywhere in the evaluation and verification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A vanishing factor was hit while evaluating a Pochhammer quotient or a
    /// closed form. `what` names the offending factor.
    #[error("pole: {what}")]
    Pole { what: String },

    #[error("degenerate base q = {0} (q must not be 0 or 1)")]
    DegenerateQ(String),

    #[error("missing symbol `{0}`")]
    MissingSymbol(String),

    #[error("missing index `{0}`")]
    MissingIndex(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("unknown proof certificate `{0}`")]
    UnknownProof(String),

    #[error("unknown series identity `{0}`")]
    UnknownSeries(String),

    #[error("exponent sequence did not pass order {order} within {cap} factors")]
    NonTerminatingExponent { order: usize, cap: usize },

    #[error("index out of cost guard: {0}")]
    CostGuard(String),

    #[error("{id}: trial {trial} exhausted {retries} pole rejections")]
    RetryExhausted { id: String, trial: u64, retries: u32 },

    #[error("{id}: counterexample at trial {trial}: {point}")]
    CounterexampleFound { id: String, trial: u64, point: String },

    #[error("{0}")]
    CheckFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub fn pole(what: impl Into<String>) -> Self {
        Error::Pole { what: what.into() }
    }

    /// True for the errors that mean "this sample point sits on a pole".
    pub fn is_pole(&self) -> bool {
        matches!(self, Error::Pole { .. } | Error::DivisionByZero)
    }
}

pub type Result<T> = std::result::Result<T, Error>;

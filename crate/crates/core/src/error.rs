use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible: {0}")]
    NonInvertible(String),
    #[error("degenerate evaluation point: linear form {form} vanishes")]
    DegenerateEvaluationPoint { form: String },
    #[error("non-cancellation in {context}: {detail}")]
    NonCancellation { context: String, detail: String },
    #[error("negative residual zero-weight monomial {monomial}")]
    NegativeObstruction { monomial: String },
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid toric graph: {0}")]
    InvalidGraph(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn cancel(context: &str, detail: impl Into<String>) -> Self {
        Error::NonCancellation { context: context.into(), detail: detail.into() }
    }
}

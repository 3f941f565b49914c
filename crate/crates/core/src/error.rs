use thiserror::Error;

use crate::field::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("shape mismatch in {op}: {detail}")]
    Shape { op: &'static str, detail: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("representation failed validation: {}", .0.join("; "))]
    Invalid(Vec<String>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A mathematical identity that must hold was found to fail on concrete data.
    #[error("identity falsified ({identity}): {witness}")]
    Falsified { identity: String, witness: String },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn shape(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Shape { op, detail: detail.into() }
    }

    pub(crate) fn falsified(identity: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Falsified {
            identity: identity.into(),
            witness: witness.into(),
        }
    }

    /// Process exit code: 1 for a falsified identity, 2 for anything the caller supplied wrong.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Falsified { .. } => 1,
            _ => 2,
        }
    }
}

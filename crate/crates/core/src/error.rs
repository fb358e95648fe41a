use thiserror::Error;

use crate::invariants::DensePair;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    Parameter { field: String, reason: String },

    #[error("capability limit reached in {what}: {detail}")]
    Capability { what: String, detail: String },

    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("hypothesis not met: {detail}")]
    HypothesisUnmet { detail: String },

    /// A counting step of a constructive procedure came up short. On inputs
    /// that satisfy the procedure's sparseness hypothesis this cannot happen,
    /// so when a dense pair is attached it refutes that hypothesis.
    #[error("internal invariant violated at {step}: {detail}")]
    Invariant {
        step: String,
        detail: String,
        dense_pair: Option<Box<DensePair>>,
    },

    #[error("i/o error on {path}: {reason}")]
    Io { path: String, reason: String },
}

impl Error {
    pub fn parameter(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parameter {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub fn capability(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Capability {
            what: what.into(),
            detail: detail.into(),
        }
    }

    pub fn parse(offset: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            reason: reason.into(),
        }
    }

    pub fn invariant(step: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Invariant {
            step: step.into(),
            detail: detail.into(),
            dense_pair: None,
        }
    }

    pub fn refuted(step: impl Into<String>, detail: impl Into<String>, pair: DensePair) -> Self {
        Error::Invariant {
            step: step.into(),
            detail: detail.into(),
            dense_pair: Some(Box::new(pair)),
        }
    }

    pub fn io(path: impl Into<String>, err: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            reason: err.to_string(),
        }
    }

    /// Capability and parameter problems map to exit code 2.
    pub fn is_capability_or_parameter(&self) -> bool {
        matches!(
            self,
            Error::Parameter { .. } | Error::Capability { .. } | Error::Parse { .. } | Error::Io { .. }
        )
    }
}

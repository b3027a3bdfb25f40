use thiserror::Error;

use crate::link::frame::FrameError;

pub type Result<T> = std::result::Result<T, Error>;

/// A single configuration problem, tied to the dotted path of the offending key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl FieldError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for FieldError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {}", join_fields(.0))]
    Config(Vec<FieldError>),

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("simulation fault at tick {tick}: {reason}")]
    SimulationFault { tick: u64, reason: String },

    #[error("empty torque trace")]
    EmptyTrace,

    #[error(transparent)]
    Frame(#[from] FrameError),

    #[error("log schema error at line {line}: {message}")]
    Schema { line: usize, message: String },

    #[error("replay divergence at tick {tick}: {field} logged {logged}, recomputed {recomputed}")]
    Divergence {
        tick: u64,
        field: String,
        logged: String,
        recomputed: String,
    },

    #[error("config parse error: {0}")]
    ConfigParse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config(vec![FieldError::new(field, message)])
    }
}

fn join_fields(fields: &[FieldError]) -> String {
    fields
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

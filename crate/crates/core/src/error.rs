use thiserror::Error;

/// Errors surfaced by every module of the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("guardrail exceeded: {0}")]
    Guardrail(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guardrail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Guardrail(msg.into()))
}

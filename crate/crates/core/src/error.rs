use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("malformed XML at line {line}, column {column}: {message}")]
    Xml {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate key `{key}` in event")]
    DuplicateKey { key: String },

    #[error("unparseable date for key `{key}`: `{raw}`")]
    InvalidDate { key: String, raw: String },

    #[error("invalid {kind} value for key `{key}`: `{raw}`")]
    InvalidValue {
        key: String,
        kind: &'static str,
        raw: String,
    },

    #[error("XES structure error: {0}")]
    Structure(String),

    #[error("duplicate {namespace} id `{id}`")]
    DuplicateId { namespace: &'static str, id: String },

    #[error("referential integrity violation: {namespace} `{id}` does not exist")]
    DanglingReference { namespace: &'static str, id: String },

    #[error("duplicate relation {event} -> {object} (qualifier {qualifier:?})")]
    DuplicateRelation {
        event: String,
        object: String,
        qualifier: Option<String>,
    },

    #[error("self-relation on object `{0}` is not permitted")]
    SelfRelation(String),

    #[error("invalid entity id: {0}")]
    InvalidEntityId(String),

    #[error("mapping configuration error: {0}")]
    Config(String),

    #[error("Turtle syntax error at line {line}, column {column}: {message}")]
    Turtle {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported Turtle construct `{construct}` at line {line}, column {column}")]
    UnsupportedConstruct {
        construct: &'static str,
        line: usize,
        column: usize,
    },

    #[error("serialization error: {0}")]
    Serialization(String),

    #[error("type error: {0}")]
    Type(String),
}

/// 1-based line and column of a byte offset within `input`.
pub(crate) fn line_column(input: &[u8], offset: usize) -> (usize, usize) {
    let offset = offset.min(input.len());
    let before = &input[..offset];
    let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
    let line_start = before
        .iter()
        .rposition(|&b| b == b'\n')
        .map_or(0, |p| p + 1);
    let column = String::from_utf8_lossy(&before[line_start..])
        .chars()
        .count()
        + 1;
    (line, column)
}

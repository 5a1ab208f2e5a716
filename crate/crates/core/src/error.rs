use thiserror::Error;

/// A syntax error in one of the text formats, with the byte offset where it
/// was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }

    /// Shifts the reported position, for errors raised on a slice of a larger input.
    pub(crate) fn offset(mut self, by: usize) -> Self {
        self.position += by;
        self
    }
}

use std::fmt;

use thiserror::Error;

/// Errors raised by tree-family operations and the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("family mismatch: {left} vs {right}")]
    FamilyMismatch { left: String, right: String },
    #[error("label count must be at least 1 (and exactly 1 for unlabeled kinds)")]
    BadLabelCount,
    #[error("label {label} out of range 1..={max}")]
    LabelOutOfRange { label: u32, max: u32 },
    #[error("linking map has {targets} targets for {components} components")]
    LinkingArity { targets: usize, components: usize },
    #[error("node {node} out of range for a tree with {nodes} nodes")]
    NodeOutOfRange { node: usize, nodes: usize },
    #[error("component index {index} out of range for {components} components")]
    ComponentOutOfRange { index: usize, components: usize },
    #[error("heap parent list violates the precedence order")]
    BadHeapOrder,
    #[error("{0}")]
    Parse(ParseError),
    #[error("the one-node tree has no factorization")]
    FactorUnit,
    #[error("family {0} does not have the unique decomposition property")]
    NoUniqueDecomposition(String),
    #[error("no nonnegative integer solution at degree {degree}")]
    NoIntegerSolution { degree: usize },
    #[error("dimension series must start with 1")]
    NotConnected,
}

/// Position-carrying error for the tree text grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(text: &str, offset: usize, message: impl Into<String>) -> Self {
        let mut line = 1;
        let mut column = 1;
        for b in text.as_bytes().iter().take(offset) {
            if *b == b'\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

use crate::ast::Pos;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("unresolved reference at {pos}: no {kind} named `{name}`")]
    Unresolved { pos: Pos, kind: &'static str, name: String },
    #[error("invariant violation at {pos}: {msg}")]
    Invariant { pos: Pos, msg: String },
    #[error("computation failed: {0}")]
    Computation(String),
}

/// Stable exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SYNTAX: i32 = 3;
pub const EXIT_UNRESOLVED: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;
pub const EXIT_COMPUTATION: i32 = 6;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Syntax { .. } => EXIT_SYNTAX,
            CliError::Unresolved { .. } => EXIT_UNRESOLVED,
            CliError::Invariant { .. } => EXIT_INVARIANT,
            CliError::Computation(_) => EXIT_COMPUTATION,
        }
    }

    pub(crate) fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        CliError::Syntax { pos, msg: msg.into() }
    }

    pub(crate) fn invariant(pos: Pos, msg: impl Into<String>) -> Self {
        CliError::Invariant { pos, msg: msg.into() }
    }

    pub(crate) fn compute(e: impl std::fmt::Display) -> Self {
        CliError::Computation(e.to_string())
    }
}

/// `(code, meaning)` for every exit code.
pub fn exit_code_table() -> Vec<(i32, &'static str)> {
    vec![
        (EXIT_OK, "success, every assertion passed"),
        (EXIT_ASSERTION, "at least one assertion failed"),
        (EXIT_USAGE, "bad command line or unreadable file"),
        (EXIT_SYNTAX, "document syntax error"),
        (EXIT_UNRESOLVED, "reference to an undefined name"),
        (EXIT_INVARIANT, "document violates a symbol invariant"),
        (EXIT_COMPUTATION, "the requested computation is undefined for the input"),
    ]
}

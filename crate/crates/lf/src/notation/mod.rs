//! Concrete syntax: lexing, parsing, type-decoration elaboration and
//! pretty-printing.
//!
//! The surface grammar follows the paper's conventions: binders take
//! widest scope, Boolean connectives bind looser than other infix
//! operators, prefix application binds tightest, and `∧`/`∨`/`+` chains
//! associate to the right (other infix operators must be parenthesised).
//! Undecorated variables are completed to the unique well-typed reading
//! when one exists; `p` and `q` default to type `t`.

mod elaborate;
mod lex;
mod parse;
mod print;

pub use elaborate::{elaborate, ElaborationDefaults};
pub use lex::Span;
pub use parse::{parse, parse_sequent, parse_type, SurfaceTerm};
pub use print::{print, DecorationMode, PrintOpts, Symbols};

use crate::term::Term;

/// Parses and elaborates a term in one step.
pub fn read_term(text: &str, guard: NotationGuard) -> Result<Term, NotationError> {
    elaborate(&parse(text)?, &ElaborationDefaults::default(), guard)
}

use thiserror::Error;

/// How much of the ι/ε vocabulary the active theory admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NotationGuard {
    /// Core LF: no `ι`, no `ε`.
    Core,
    /// LF_ι: `ι` (and everything defined from it) is available.
    Iota,
    /// LF_ε: both `ι` and `ε` are available.
    Epsilon,
}

impl std::fmt::Display for NotationGuard {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotationGuard::Core => write!(f, "core"),
            NotationGuard::Iota => write!(f, "iota"),
            NotationGuard::Epsilon => write!(f, "epsilon"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("syntax error at {span}: {message}")]
    SyntaxError { span: Span, message: String },
    #[error("unknown notation `{0}`")]
    UnknownNotation(String),
    #[error("ambiguous types: {0}")]
    AmbiguousTypes(String),
    #[error("no well-typed completion: {0}")]
    NoCompletion(String),
    #[error("notation requires {needs} theory level, active level is {have}")]
    GuardViolation {
        needs: NotationGuard,
        have: NotationGuard,
    },
    #[error("`{name}` expects {expected} type argument(s), got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
}

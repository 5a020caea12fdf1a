//! Type checker for the lambda-Pi calculus modulo rewriting.

pub mod document;
pub mod pretty;
pub mod reduce;
pub mod signature;
pub mod term;
pub mod typing;

pub use document::{check_entries, check_entry, CheckOptions, CheckReport, Entry, EntryStatus};
pub use reduce::{Reducer, DEFAULT_BUDGET};
pub use signature::{Constant, Pattern, Rule, Signature};
pub use term::{Name, Term, Tm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("reduction budget of {0} steps exhausted")]
    Budget(u64),
    #[error("type error at {path}: {msg}")]
    Type { path: String, msg: String },
    #[error("{0} is already declared")]
    Redeclared(String),
    #[error("ill-formed rule: {0}")]
    Rule(String),
}

//! First-order terms, literals, clauses and substitutions over a
//! rank-1 polymorphic sort language.

mod clause;
mod sort;
mod subst;
mod term;
mod unify;

pub use clause::{clause_variable_closure, rename_apart, Atom, Clause, Literal};
pub use sort::{Sort, IOTA};
pub use subst::Substitution;
pub use term::{Term, INHABITANT};
pub use unify::{
    clauses_equivalent, match_literals, match_term, unify, unify_atoms, unify_pairs, Matcher, Placement, UnifyError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FolError {
    #[error("variable {var} of sort {expected} replaced by a term of sort {found}")]
    SortMismatch { var: String, expected: Sort, found: Sort },
}

/// Applies `sub` to `t`.
pub fn apply_substitution(sub: &Substitution, t: &Term) -> Result<Term, FolError> {
    sub.apply(t)
}

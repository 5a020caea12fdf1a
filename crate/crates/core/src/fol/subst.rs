use std::collections::BTreeMap;
use std::fmt;

use super::clause::{Atom, Literal};
use super::sort::Sort;
use super::term::Term;
use super::FolError;

/// Finite map from sort variables to sorts and from term variables to terms.
/// Application is simultaneous: replacement terms are not substituted again.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub sorts: BTreeMap<String, Sort>,
    pub terms: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.sorts.is_empty() && self.terms.is_empty()
    }

    pub fn with_term(mut self, var: &str, t: Term) -> Self {
        self.terms.insert(var.to_string(), t);
        self
    }

    pub fn with_sort(mut self, var: &str, s: Sort) -> Self {
        self.sorts.insert(var.to_string(), s);
        self
    }

    pub fn apply_sort(&self, s: &Sort) -> Sort {
        match s {
            Sort::Var(v) => self.sorts.get(v).cloned().unwrap_or_else(|| s.clone()),
            Sort::App(h, args) => Sort::App(h.clone(), args.iter().map(|a| self.apply_sort(a)).collect()),
        }
    }

    /// Applies the substitution; a replacement whose sort differs from the
    /// substituted variable's sort is reported as an error.
    pub fn apply(&self, t: &Term) -> Result<Term, FolError> {
        match t {
            Term::Var { name, sort } => {
                let sort = self.apply_sort(sort);
                match self.terms.get(name) {
                    Some(r) if *r.sort() == sort => Ok(r.clone()),
                    Some(r) => {
                        Err(FolError::SortMismatch { var: name.clone(), expected: sort, found: r.sort().clone() })
                    }
                    None => Ok(Term::Var { name: name.clone(), sort }),
                }
            }
            Term::App { head, sort_args, args, sort } => Ok(Term::App {
                head: head.clone(),
                sort_args: sort_args.iter().map(|s| self.apply_sort(s)).collect(),
                args: args.iter().map(|a| self.apply(a)).collect::<Result<_, _>>()?,
                sort: self.apply_sort(sort),
            }),
        }
    }

    pub fn apply_literal(&self, l: &Literal) -> Result<Literal, FolError> {
        let atom = match &l.atom {
            Atom::Pred { head, sort_args, args } => Atom::Pred {
                head: head.clone(),
                sort_args: sort_args.iter().map(|s| self.apply_sort(s)).collect(),
                args: args.iter().map(|a| self.apply(a)).collect::<Result<_, _>>()?,
            },
            Atom::Eq { lhs, rhs, sort } => {
                Atom::Eq { lhs: self.apply(lhs)?, rhs: self.apply(rhs)?, sort: self.apply_sort(sort) }
            }
        };
        Ok(Literal { positive: l.positive, atom })
    }

    /// `self` followed by `other`: applying the result equals applying `self`
    /// and then `other`.
    pub fn then(&self, other: &Substitution) -> Result<Substitution, FolError> {
        let mut out = Substitution::default();
        for (k, v) in &self.sorts {
            out.sorts.insert(k.clone(), other.apply_sort(v));
        }
        for (k, v) in &other.sorts {
            out.sorts.entry(k.clone()).or_insert_with(|| v.clone());
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), other.apply(v)?);
        }
        for (k, v) in &other.terms {
            out.terms.entry(k.clone()).or_insert_with(|| v.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (k, v) in &self.sorts {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{k} -> {v}")?;
        }
        for (k, v) in &self.terms {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{k} -> {v}")?;
        }
        write!(f, "}}")
    }
}

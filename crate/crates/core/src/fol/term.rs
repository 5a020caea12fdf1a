use std::fmt;

use super::sort::Sort;

/// Reserved head of the inhabitation witness of a sort. It never comes out of
/// the trace parser; translators use it to instantiate variables that vanish
/// from a conclusion.
pub const INHABITANT: &str = "*";

/// A first-order term. Applications cache their result sort so that
/// unification can compare sorts without consulting the symbol table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var { name: String, sort: Sort },
    App { head: String, sort_args: Vec<Sort>, args: Vec<Term>, sort: Sort },
}

impl Term {
    pub fn var(name: impl Into<String>, sort: Sort) -> Term {
        Term::Var { name: name.into(), sort }
    }

    pub fn app(head: impl Into<String>, sort_args: Vec<Sort>, args: Vec<Term>, sort: Sort) -> Term {
        Term::App { head: head.into(), sort_args, args, sort }
    }

    /// A nullary, monomorphic symbol of sort iota.
    pub fn constant(head: impl Into<String>) -> Term {
        Term::app(head, Vec::new(), Vec::new(), Sort::iota())
    }

    /// The inhabitation witness of `sort`.
    pub fn inhabitant(sort: Sort) -> Term {
        Term::App { head: INHABITANT.to_string(), sort_args: vec![sort.clone()], args: Vec::new(), sort }
    }

    pub fn is_inhabitant(&self) -> bool {
        matches!(self, Term::App { head, .. } if head == INHABITANT)
    }

    pub fn sort(&self) -> &Sort {
        match self {
            Term::Var { sort, .. } | Term::App { sort, .. } => sort,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var { .. })
    }

    pub fn occurs(&self, name: &str) -> bool {
        match self {
            Term::Var { name: n, .. } => n == name,
            Term::App { args, .. } => args.iter().any(|a| a.occurs(name)),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var { .. } => false,
            Term::App { args, .. } => args.iter().all(Term::is_ground),
        }
    }

    /// Appends free term variables in first-occurrence order.
    pub fn collect_vars(&self, out: &mut Vec<(String, Sort)>) {
        match self {
            Term::Var { name, sort } => {
                if !out.iter().any(|(n, _)| n == name) {
                    out.push((name.clone(), sort.clone()));
                }
            }
            Term::App { args, .. } => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Appends free sort variables in first-occurrence order (variable sorts,
    /// explicit sort arguments and result sorts).
    pub fn collect_sort_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var { sort, .. } => sort.collect_vars(out),
            Term::App { sort_args, args, sort, .. } => {
                sort_args.iter().for_each(|s| s.collect_vars(out));
                args.iter().for_each(|a| a.collect_sort_vars(out));
                sort.collect_vars(out);
            }
        }
    }

    /// The subterm at `path`, where each index selects a term argument.
    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => match self {
                Term::App { args, .. } => args.get(i)?.subterm(rest),
                Term::Var { .. } => None,
            },
        }
    }

    /// Paths of the non-variable subterms, outermost first.
    pub fn positions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn go(t: &Term, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if let Term::App { args, .. } = t {
                out.push(path.clone());
                for (i, a) in args.iter().enumerate() {
                    path.push(i);
                    go(a, path, out);
                    path.pop();
                }
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn replace_at(&self, path: &[usize], by: &Term) -> Option<Term> {
        match path.split_first() {
            None => Some(by.clone()),
            Some((&i, rest)) => match self {
                Term::App { head, sort_args, args, sort } => {
                    let mut args = args.clone();
                    let slot = args.get_mut(i)?;
                    *slot = slot.replace_at(rest, by)?;
                    Some(Term::App { head: head.clone(), sort_args: sort_args.clone(), args, sort: sort.clone() })
                }
                Term::Var { .. } => None,
            },
        }
    }

    /// Replaces every occurrence of `from` by `to`.
    pub fn replace_all(&self, from: &Term, to: &Term) -> Term {
        if self == from {
            return to.clone();
        }
        match self {
            Term::Var { .. } => self.clone(),
            Term::App { head, sort_args, args, sort } => Term::App {
                head: head.clone(),
                sort_args: sort_args.clone(),
                args: args.iter().map(|a| a.replace_all(from, to)).collect(),
                sort: sort.clone(),
            },
        }
    }

    pub fn contains(&self, sub: &Term) -> bool {
        self == sub
            || match self {
                Term::Var { .. } => false,
                Term::App { args, .. } => args.iter().any(|a| a.contains(sub)),
            }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var { .. } => 1,
            Term::App { args, .. } => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn rename(&self, terms: &dyn Fn(&str) -> Option<String>, sorts: &dyn Fn(&str) -> Option<String>) -> Term {
        match self {
            Term::Var { name, sort } => {
                Term::Var { name: terms(name).unwrap_or_else(|| name.clone()), sort: sort.rename(sorts) }
            }
            Term::App { head, sort_args, args, sort } => Term::App {
                head: head.clone(),
                sort_args: sort_args.iter().map(|s| s.rename(sorts)).collect(),
                args: args.iter().map(|a| a.rename(terms, sorts)).collect(),
                sort: sort.rename(sorts),
            },
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var { name, .. } => write!(f, "{name}"),
            Term::App { head, sort_args, args, .. } => {
                write!(f, "{head}")?;
                if !sort_args.is_empty() {
                    write!(f, "[")?;
                    for (i, s) in sort_args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{s}")?;
                    }
                    write!(f, "]")?;
                }
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use super::sort::Sort;
use super::subst::Substitution;
use super::term::Term;

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Pred { head: String, sort_args: Vec<Sort>, args: Vec<Term> },
    Eq { lhs: Term, rhs: Term, sort: Sort },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pred(positive: bool, head: impl Into<String>, sort_args: Vec<Sort>, args: Vec<Term>) -> Literal {
        Literal { positive, atom: Atom::Pred { head: head.into(), sort_args, args } }
    }

    pub fn eq(positive: bool, lhs: Term, rhs: Term) -> Literal {
        let sort = lhs.sort().clone();
        Literal { positive, atom: Atom::Eq { lhs, rhs, sort } }
    }

    pub fn is_equation(&self) -> bool {
        matches!(self.atom, Atom::Eq { .. })
    }

    pub fn negated(&self) -> Literal {
        Literal { positive: !self.positive, atom: self.atom.clone() }
    }

    /// Swaps the sides of an equation; other literals are returned unchanged.
    pub fn flipped(&self) -> Literal {
        match &self.atom {
            Atom::Eq { lhs, rhs, sort } => Literal {
                positive: self.positive,
                atom: Atom::Eq { lhs: rhs.clone(), rhs: lhs.clone(), sort: sort.clone() },
            },
            Atom::Pred { .. } => self.clone(),
        }
    }

    /// Term arguments addressed by the first index of a position path.
    pub fn arguments(&self) -> Vec<&Term> {
        match &self.atom {
            Atom::Pred { args, .. } => args.iter().collect(),
            Atom::Eq { lhs, rhs, .. } => vec![lhs, rhs],
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        let (&first, rest) = path.split_first()?;
        self.arguments().get(first)?.subterm(rest)
    }

    /// Paths of the non-variable subterms, argument by argument.
    pub fn positions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (i, a) in self.arguments().into_iter().enumerate() {
            for mut p in a.positions() {
                p.insert(0, i);
                out.push(p);
            }
        }
        out
    }

    pub fn replace_at(&self, path: &[usize], by: &Term) -> Option<Literal> {
        let (&first, rest) = path.split_first()?;
        let mut out = self.clone();
        match &mut out.atom {
            Atom::Pred { args, .. } => {
                let slot = args.get_mut(first)?;
                *slot = slot.replace_at(rest, by)?;
            }
            Atom::Eq { lhs, rhs, .. } => {
                let slot = match first {
                    0 => lhs,
                    1 => rhs,
                    _ => return None,
                };
                *slot = slot.replace_at(rest, by)?;
            }
        }
        Some(out)
    }

    pub fn replace_all(&self, from: &Term, to: &Term) -> Literal {
        self.map_terms(&|t| t.replace_all(from, to))
    }

    pub fn contains(&self, sub: &Term) -> bool {
        self.arguments().iter().any(|t| t.contains(sub))
    }

    pub fn map_terms(&self, f: &dyn Fn(&Term) -> Term) -> Literal {
        let atom = match &self.atom {
            Atom::Pred { head, sort_args, args } => {
                Atom::Pred { head: head.clone(), sort_args: sort_args.clone(), args: args.iter().map(f).collect() }
            }
            Atom::Eq { lhs, rhs, .. } => {
                let (lhs, rhs) = (f(lhs), f(rhs));
                Atom::Eq { sort: lhs.sort().clone(), lhs, rhs }
            }
        };
        Literal { positive: self.positive, atom }
    }

    pub fn collect_vars(&self, out: &mut Vec<(String, Sort)>) {
        self.arguments().iter().for_each(|t| t.collect_vars(out));
    }

    pub fn collect_sort_vars(&self, out: &mut Vec<String>) {
        match &self.atom {
            Atom::Pred { sort_args, args, .. } => {
                sort_args.iter().for_each(|s| s.collect_vars(out));
                args.iter().for_each(|a| a.collect_sort_vars(out));
            }
            Atom::Eq { lhs, rhs, sort } => {
                lhs.collect_sort_vars(out);
                rhs.collect_sort_vars(out);
                sort.collect_vars(out);
            }
        }
    }

    pub fn rename(&self, terms: &dyn Fn(&str) -> Option<String>, sorts: &dyn Fn(&str) -> Option<String>) -> Literal {
        let atom = match &self.atom {
            Atom::Pred { head, sort_args, args } => Atom::Pred {
                head: head.clone(),
                sort_args: sort_args.iter().map(|s| s.rename(sorts)).collect(),
                args: args.iter().map(|a| a.rename(terms, sorts)).collect(),
            },
            Atom::Eq { lhs, rhs, sort } => {
                Atom::Eq { lhs: lhs.rename(terms, sorts), rhs: rhs.rename(terms, sorts), sort: sort.rename(sorts) }
            }
        };
        Literal { positive: self.positive, atom }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.atom {
            Atom::Pred { head, sort_args, args } => {
                if !self.positive {
                    write!(f, "~")?;
                }
                let t = Term::app(head.clone(), sort_args.clone(), args.clone(), Sort::iota());
                write!(f, "{t}")
            }
            Atom::Eq { lhs, rhs, .. } => {
                write!(f, "{} {lhs} {rhs}", if self.positive { "=" } else { "!=" })
            }
        }
    }
}

/// A universally closed disjunction of literals. Sort variables are bound
/// before term variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub sort_vars: Vec<String>,
    pub term_vars: Vec<(String, Sort)>,
    pub literals: Vec<Literal>,
}

impl Clause {
    /// Builds a clause whose variable lists are the free variables of
    /// `literals` in first-occurrence order.
    pub fn new(literals: Vec<Literal>) -> Clause {
        let mut c = Clause { sort_vars: Vec::new(), term_vars: Vec::new(), literals };
        c.close();
        c
    }

    pub fn empty() -> Clause {
        Clause::new(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    fn close(&mut self) {
        let mut terms = Vec::new();
        let mut sorts = Vec::new();
        for l in &self.literals {
            l.collect_vars(&mut terms);
            l.collect_sort_vars(&mut sorts);
        }
        self.term_vars = terms;
        self.sort_vars = sorts;
    }

    pub fn var_names(&self) -> HashSet<String> {
        self.term_vars.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn rename(&self, terms: &dyn Fn(&str) -> Option<String>, sorts: &dyn Fn(&str) -> Option<String>) -> Clause {
        Clause::new(self.literals.iter().map(|l| l.rename(terms, sorts)).collect())
    }

    pub fn apply(&self, sub: &Substitution) -> Result<Clause, super::FolError> {
        let lits = self.literals.iter().map(|l| sub.apply_literal(l)).collect::<Result<_, _>>()?;
        Ok(Clause::new(lits))
    }

    /// Renames variables to `V0, V1, …` and sort variables to `S0, S1, …` in
    /// first-occurrence order. Two clauses are alpha-equivalent iff their
    /// canonical forms are equal.
    pub fn canonical(&self) -> Clause {
        let terms: Vec<String> = self.term_vars.iter().map(|(n, _)| n.clone()).collect();
        let sorts = self.sort_vars.clone();
        let tmap = |n: &str| terms.iter().position(|x| x == n).map(|i| format!("V{i}"));
        let smap = |n: &str| sorts.iter().position(|x| x == n).map(|i| format!("S{i}"));
        self.rename(&tmap, &smap)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Rebuilds the variable lists of `c` from its literals.
pub fn clause_variable_closure(c: &Clause) -> Clause {
    Clause::new(c.literals.clone())
}

static FRESH: AtomicUsize = AtomicUsize::new(0);

fn fresh_name(base: &str, taken: &HashSet<String>) -> String {
    loop {
        let n = FRESH.fetch_add(1, Ordering::Relaxed);
        let candidate = format!("{base}_{n}");
        if !taken.contains(&candidate) {
            return candidate;
        }
    }
}

/// Renames the variables of `c2` that clash with variables of `c1`. The
/// returned substitution maps each renamed variable of `c2` to its new name.
pub fn rename_apart(c1: &Clause, c2: &Clause) -> (Clause, Clause, Substitution) {
    let mut taken: HashSet<String> = c1.var_names();
    taken.extend(c2.var_names());
    taken.extend(c1.sort_vars.iter().cloned());
    taken.extend(c2.sort_vars.iter().cloned());

    let mut sort_ren: Vec<(String, String)> = Vec::new();
    for s in &c2.sort_vars {
        if c1.sort_vars.contains(s) {
            let n = fresh_name(s, &taken);
            taken.insert(n.clone());
            sort_ren.push((s.clone(), n));
        }
    }
    let mut term_ren: Vec<(String, String)> = Vec::new();
    let c1_vars = c1.var_names();
    for (v, _) in &c2.term_vars {
        if c1_vars.contains(v) {
            let n = fresh_name(v, &taken);
            taken.insert(n.clone());
            term_ren.push((v.clone(), n));
        }
    }
    let smap = |n: &str| sort_ren.iter().find(|(a, _)| a == n).map(|(_, b)| b.clone());
    let tmap = |n: &str| term_ren.iter().find(|(a, _)| a == n).map(|(_, b)| b.clone());
    let renamed = c2.rename(&tmap, &smap);

    let mut sub = Substitution::default();
    for (a, b) in &sort_ren {
        sub.sorts.insert(a.clone(), Sort::Var(b.clone()));
    }
    for (v, sort) in &c2.term_vars {
        if let Some(b) = tmap(v) {
            sub.terms.insert(v.clone(), Term::var(b, sort.rename(&smap)));
        }
    }
    (c1.clone(), renamed, sub)
}

//! Robinson unification with eager composition, and one-sided matching.
//!
//! Sorts are unified in the same pass as terms: before a variable is bound,
//! its sort is unified with the sort of the replacement.

use super::clause::{Atom, Literal};
use super::sort::Sort;
use super::subst::Substitution;
use super::term::Term;
use super::FolError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnifyError {
    #[error("symbol clash: {0} vs {1}")]
    Clash(String, String),
    #[error("sort clash: {0} vs {1}")]
    SortClash(Sort, Sort),
    #[error("occurs check: {0} in {1}")]
    Occurs(String, String),
    #[error(transparent)]
    Sort(#[from] FolError),
}

#[derive(Default)]
struct Unifier {
    sub: Substitution,
}

impl Unifier {
    fn bind_sort(&mut self, var: &str, s: Sort) -> Result<(), UnifyError> {
        let single = Substitution::new().with_sort(var, s.clone());
        for v in self.sub.sorts.values_mut() {
            *v = single.apply_sort(v);
        }
        let terms = std::mem::take(&mut self.sub.terms);
        for (k, v) in terms {
            self.sub.terms.insert(k, single.apply(&v)?);
        }
        self.sub.sorts.insert(var.to_string(), s);
        Ok(())
    }

    fn bind_term(&mut self, var: &str, t: Term) -> Result<(), UnifyError> {
        let single = Substitution::new().with_term(var, t.clone());
        let terms = std::mem::take(&mut self.sub.terms);
        for (k, v) in terms {
            self.sub.terms.insert(k, single.apply(&v)?);
        }
        self.sub.terms.insert(var.to_string(), t);
        Ok(())
    }

    fn sorts(&mut self, a: &Sort, b: &Sort) -> Result<(), UnifyError> {
        let a = self.sub.apply_sort(a);
        let b = self.sub.apply_sort(b);
        if a == b {
            return Ok(());
        }
        match (&a, &b) {
            (Sort::Var(v), other) | (other, Sort::Var(v)) => {
                if other.occurs(v) {
                    return Err(UnifyError::Occurs(v.clone(), other.to_string()));
                }
                self.bind_sort(v, other.clone())
            }
            (Sort::App(h1, a1), Sort::App(h2, a2)) => {
                if h1 != h2 || a1.len() != a2.len() {
                    return Err(UnifyError::SortClash(a.clone(), b.clone()));
                }
                for (x, y) in a1.iter().zip(a2) {
                    self.sorts(x, y)?;
                }
                Ok(())
            }
        }
    }

    fn terms(&mut self, a: &Term, b: &Term) -> Result<(), UnifyError> {
        let a0 = self.sub.apply(a)?;
        let b0 = self.sub.apply(b)?;
        if a0 == b0 {
            return Ok(());
        }
        self.sorts(a0.sort(), b0.sort())?;
        let a = self.sub.apply(&a0)?;
        let b = self.sub.apply(&b0)?;
        if a == b {
            return Ok(());
        }
        match (&a, &b) {
            (Term::Var { name, .. }, other) | (other, Term::Var { name, .. }) => {
                if other.occurs(name) {
                    return Err(UnifyError::Occurs(name.clone(), other.to_string()));
                }
                self.bind_term(name, other.clone())
            }
            (
                Term::App { head: h1, sort_args: s1, args: a1, .. },
                Term::App { head: h2, sort_args: s2, args: a2, .. },
            ) => {
                if h1 != h2 || a1.len() != a2.len() || s1.len() != s2.len() {
                    return Err(UnifyError::Clash(a.to_string(), b.to_string()));
                }
                for (x, y) in s1.iter().zip(s2) {
                    self.sorts(x, y)?;
                }
                for (x, y) in a1.iter().zip(a2) {
                    self.terms(x, y)?;
                }
                Ok(())
            }
        }
    }
}

/// Most general unifier of `a` and `b`.
pub fn unify(a: &Term, b: &Term) -> Result<Substitution, UnifyError> {
    unify_pairs(&[(a.clone(), b.clone())], &[])
}

/// Simultaneous most general unifier of several term and sort pairs.
pub fn unify_pairs(terms: &[(Term, Term)], sorts: &[(Sort, Sort)]) -> Result<Substitution, UnifyError> {
    let mut u = Unifier::default();
    for (a, b) in sorts {
        u.sorts(a, b)?;
    }
    for (a, b) in terms {
        u.terms(a, b)?;
    }
    Ok(u.sub)
}

/// Unifies the atoms of two literals, ignoring polarity. Equations are tried
/// as written first and then with the sides of `b` swapped; the flag reports
/// whether the swap was needed.
pub fn unify_atoms(a: &Atom, b: &Atom) -> Result<(Substitution, bool), UnifyError> {
    match (a, b) {
        (Atom::Pred { head: h1, sort_args: s1, args: a1 }, Atom::Pred { head: h2, sort_args: s2, args: a2 }) => {
            if h1 != h2 || a1.len() != a2.len() || s1.len() != s2.len() {
                return Err(UnifyError::Clash(h1.clone(), h2.clone()));
            }
            let terms: Vec<_> = a1.iter().cloned().zip(a2.iter().cloned()).collect();
            let sorts: Vec<_> = s1.iter().cloned().zip(s2.iter().cloned()).collect();
            Ok((unify_pairs(&terms, &sorts)?, false))
        }
        (Atom::Eq { lhs: l1, rhs: r1, sort: s1 }, Atom::Eq { lhs: l2, rhs: r2, sort: s2 }) => {
            let sorts = [(s1.clone(), s2.clone())];
            match unify_pairs(&[(l1.clone(), l2.clone()), (r1.clone(), r2.clone())], &sorts) {
                Ok(s) => Ok((s, false)),
                Err(first) => unify_pairs(&[(l1.clone(), r2.clone()), (r1.clone(), l2.clone())], &sorts)
                    .map(|s| (s, true))
                    .map_err(|_| first),
            }
        }
        _ => Err(UnifyError::Clash("predicate".into(), "equation".into())),
    }
}

/// One-sided matching: binds only variables of the pattern side. Variables
/// of the target are rigid, even when they share names with pattern
/// variables.
#[derive(Clone, Debug, Default)]
pub struct Matcher {
    pub sub: Substitution,
}

impl Matcher {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_substitution(sub: Substitution) -> Self {
        Matcher { sub }
    }

    pub fn sort(&mut self, pattern: &Sort, target: &Sort) -> bool {
        match pattern {
            Sort::Var(v) => match self.sub.sorts.get(v) {
                Some(bound) => bound == target,
                None => {
                    self.sub.sorts.insert(v.clone(), target.clone());
                    true
                }
            },
            Sort::App(h, args) => match target {
                Sort::App(h2, args2) if h == h2 && args.len() == args2.len() => {
                    args.iter().zip(args2).all(|(p, t)| self.sort(p, t))
                }
                _ => false,
            },
        }
    }

    pub fn term(&mut self, pattern: &Term, target: &Term) -> bool {
        match pattern {
            Term::Var { name, sort } => {
                if !self.sort(sort, target.sort()) {
                    return false;
                }
                match self.sub.terms.get(name) {
                    Some(bound) => bound == target,
                    None => {
                        self.sub.terms.insert(name.clone(), target.clone());
                        true
                    }
                }
            }
            Term::App { head, sort_args, args, sort } => match target {
                Term::App { head: h2, sort_args: s2, args: a2, sort: rs }
                    if head == h2 && args.len() == a2.len() && sort_args.len() == s2.len() =>
                {
                    sort_args.iter().zip(s2).all(|(p, t)| self.sort(p, t))
                        && args.iter().zip(a2).all(|(p, t)| self.term(p, t))
                        && self.sort(sort, rs)
                }
                _ => false,
            },
        }
    }

    /// Matches `pattern` onto `target`, with the sides of the target equation
    /// swapped when `flip` is set. Polarities must agree.
    pub fn literal(&mut self, pattern: &Literal, target: &Literal, flip: bool) -> bool {
        if pattern.positive != target.positive {
            return false;
        }
        match (&pattern.atom, &target.atom) {
            (Atom::Pred { head, sort_args, args }, Atom::Pred { head: h2, sort_args: s2, args: a2 }) => {
                !flip
                    && head == h2
                    && args.len() == a2.len()
                    && sort_args.len() == s2.len()
                    && sort_args.iter().zip(s2).all(|(p, t)| self.sort(p, t))
                    && args.iter().zip(a2).all(|(p, t)| self.term(p, t))
            }
            (Atom::Eq { lhs, rhs, sort }, Atom::Eq { lhs: l2, rhs: r2, sort: s2 }) => {
                let (tl, tr) = if flip { (r2, l2) } else { (l2, r2) };
                self.sort(sort, s2) && self.term(lhs, tl) && self.term(rhs, tr)
            }
            _ => false,
        }
    }
}

/// One-sided matching of `pattern` onto `target`.
pub fn match_term(pattern: &Term, target: &Term) -> Option<Substitution> {
    let mut m = Matcher::new();
    m.term(pattern, target).then_some(m.sub)
}

/// How each pattern literal was placed by [`match_literals`]: target index
/// and whether the target equation is the pattern flipped.
pub type Placement = Vec<(usize, bool)>;

/// Finds a substitution `θ` over pattern variables such that every pattern
/// literal, instantiated by `θ`, equals some target literal up to equation
/// orientation. Several pattern literals may land on the same target. The
/// search starts from `seed` and prefers earlier targets and unflipped
/// equations.
pub fn match_literals(
    seed: &Substitution,
    patterns: &[Literal],
    targets: &[Literal],
) -> Option<(Substitution, Placement)> {
    fn go(m: Matcher, patterns: &[Literal], targets: &[Literal], acc: &mut Placement) -> Option<Substitution> {
        let Some((p, rest)) = patterns.split_first() else {
            return Some(m.sub);
        };
        for (ti, t) in targets.iter().enumerate() {
            let flips: &[bool] = if p.is_equation() { &[false, true] } else { &[false] };
            for &flip in flips {
                let mut m2 = m.clone();
                if m2.literal(p, t, flip) {
                    acc.push((ti, flip));
                    if let Some(s) = go(m2, rest, targets, acc) {
                        return Some(s);
                    }
                    acc.pop();
                }
            }
        }
        None
    }
    let mut acc = Vec::new();
    go(Matcher::from_substitution(seed.clone()), patterns, targets, &mut acc).map(|s| (s, acc))
}

/// True iff the clauses are equal up to variable renaming, literal order and
/// equation orientation.
pub fn clauses_equivalent(a: &[Literal], b: &[Literal]) -> bool {
    fn renaming(sub: &Substitution) -> bool {
        let mut images: Vec<&Term> = sub.terms.values().collect();
        if !images.iter().all(|t| t.is_var()) {
            return false;
        }
        images.sort();
        images.dedup();
        let mut sorts: Vec<&Sort> = sub.sorts.values().collect();
        if !sorts.iter().all(|s| matches!(s, Sort::Var(_))) {
            return false;
        }
        sorts.sort();
        sorts.dedup();
        images.len() == sub.terms.len() && sorts.len() == sub.sorts.len()
    }
    fn go(m: Matcher, patterns: &[Literal], targets: &[Literal], used: &mut Vec<bool>) -> bool {
        let Some((p, rest)) = patterns.split_first() else {
            return renaming(&m.sub);
        };
        for (ti, t) in targets.iter().enumerate() {
            if used[ti] {
                continue;
            }
            for flip in [false, true] {
                if flip && !p.is_equation() {
                    continue;
                }
                let mut m2 = m.clone();
                if m2.literal(p, t, flip) {
                    used[ti] = true;
                    if go(m2, rest, targets, used) {
                        return true;
                    }
                    used[ti] = false;
                }
            }
        }
        false
    }
    a.len() == b.len()
        && go(Matcher::new(), a, b, &mut vec![false; b.len()])
        && go(Matcher::new(), b, a, &mut vec![false; a.len()])
}

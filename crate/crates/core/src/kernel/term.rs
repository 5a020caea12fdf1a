use std::sync::Arc;

pub type Name = Arc<str>;

/// Shared kernel term.
pub type Tm = Arc<Term>;

/// λΠ-modulo terms. Bound variables are de Bruijn indices; binders keep a
/// name hint for printing only. Equality ignores the hints, so it is
/// alpha-equivalence.
#[derive(Debug, Clone)]
pub enum Term {
    Kind,
    Type,
    Const(Name),
    Var(usize),
    App(Tm, Tm),
    Lam(Name, Tm, Tm),
    Pi(Name, Tm, Tm),
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        use Term::*;
        match (self, other) {
            (Kind, Kind) | (Type, Type) => true,
            (Const(a), Const(b)) => a == b,
            (Var(a), Var(b)) => a == b,
            (App(f1, a1), App(f2, a2)) => (Arc::ptr_eq(f1, f2) || f1 == f2) && (Arc::ptr_eq(a1, a2) || a1 == a2),
            (Lam(_, t1, b1), Lam(_, t2, b2)) | (Pi(_, t1, b1), Pi(_, t2, b2)) => {
                (Arc::ptr_eq(t1, t2) || t1 == t2) && (Arc::ptr_eq(b1, b2) || b1 == b2)
            }
            _ => false,
        }
    }
}

impl Eq for Term {}

pub fn kind() -> Tm {
    Arc::new(Term::Kind)
}

pub fn ty() -> Tm {
    Arc::new(Term::Type)
}

pub fn cst(name: &str) -> Tm {
    Arc::new(Term::Const(Name::from(name)))
}

pub fn var(i: usize) -> Tm {
    Arc::new(Term::Var(i))
}

pub fn app(f: Tm, a: Tm) -> Tm {
    Arc::new(Term::App(f, a))
}

pub fn apps(f: Tm, args: impl IntoIterator<Item = Tm>) -> Tm {
    args.into_iter().fold(f, app)
}

pub fn lam(x: &str, a: Tm, b: Tm) -> Tm {
    Arc::new(Term::Lam(Name::from(x), a, b))
}

pub fn pi(x: &str, a: Tm, b: Tm) -> Tm {
    Arc::new(Term::Pi(Name::from(x), a, b))
}

/// Non-dependent product; `b` lives in the same scope as `a`.
pub fn arrow(a: Tm, b: Tm) -> Tm {
    Arc::new(Term::Pi(Name::from("_"), a, shift(&b, 1)))
}

/// Splits an application spine into its head and arguments.
pub fn unapply(t: &Tm) -> (Tm, Vec<Tm>) {
    let mut args = Vec::new();
    let mut cur = t;
    while let Term::App(f, a) = &**cur {
        args.push(a.clone());
        cur = f;
    }
    args.reverse();
    (cur.clone(), args)
}

/// Adds `d` to every variable index `>= cutoff`.
pub fn shift_from(t: &Tm, d: usize, cutoff: usize) -> Tm {
    if d == 0 {
        return t.clone();
    }
    match &**t {
        Term::Var(i) if *i >= cutoff => var(i + d),
        Term::Var(_) | Term::Kind | Term::Type | Term::Const(_) => t.clone(),
        Term::App(f, a) => app(shift_from(f, d, cutoff), shift_from(a, d, cutoff)),
        Term::Lam(x, a, b) => Arc::new(Term::Lam(x.clone(), shift_from(a, d, cutoff), shift_from(b, d, cutoff + 1))),
        Term::Pi(x, a, b) => Arc::new(Term::Pi(x.clone(), shift_from(a, d, cutoff), shift_from(b, d, cutoff + 1))),
    }
}

pub fn shift(t: &Tm, d: usize) -> Tm {
    shift_from(t, d, 0)
}

/// Replaces the variables `0..vals.len()` of `t` by `vals` (index `k` by
/// `vals[k]`) and lowers the remaining free variables accordingly.
pub fn instantiate(t: &Tm, vals: &[Tm]) -> Tm {
    fn go(t: &Tm, vals: &[Tm], depth: usize) -> Tm {
        match &**t {
            Term::Var(i) if *i < depth => t.clone(),
            Term::Var(i) if *i < depth + vals.len() => shift(&vals[i - depth], depth),
            Term::Var(i) => var(i - vals.len()),
            Term::Kind | Term::Type | Term::Const(_) => t.clone(),
            Term::App(f, a) => app(go(f, vals, depth), go(a, vals, depth)),
            Term::Lam(x, a, b) => Arc::new(Term::Lam(x.clone(), go(a, vals, depth), go(b, vals, depth + 1))),
            Term::Pi(x, a, b) => Arc::new(Term::Pi(x.clone(), go(a, vals, depth), go(b, vals, depth + 1))),
        }
    }
    if vals.is_empty() || !has_loose(t, 0) {
        return t.clone();
    }
    go(t, vals, 0)
}

/// Beta-substitutes `arg` for variable 0 of `body`.
pub fn subst(body: &Tm, arg: &Tm) -> Tm {
    instantiate(body, std::slice::from_ref(arg))
}

/// True iff some variable with index `>= depth` occurs free.
pub fn has_loose(t: &Tm, depth: usize) -> bool {
    match &**t {
        Term::Var(i) => *i >= depth,
        Term::Kind | Term::Type | Term::Const(_) => false,
        Term::App(f, a) => has_loose(f, depth) || has_loose(a, depth),
        Term::Lam(_, a, b) | Term::Pi(_, a, b) => has_loose(a, depth) || has_loose(b, depth + 1),
    }
}

/// True iff variable `i` occurs free in `t`.
pub fn occurs(t: &Tm, i: usize) -> bool {
    match &**t {
        Term::Var(j) => *j == i,
        Term::Kind | Term::Type | Term::Const(_) => false,
        Term::App(f, a) => occurs(f, i) || occurs(a, i),
        Term::Lam(_, a, b) | Term::Pi(_, a, b) => occurs(a, i) || occurs(b, i + 1),
    }
}

/// Names of the constants occurring in `t`.
pub fn constants(t: &Tm, out: &mut std::collections::HashSet<Name>) {
    match &**t {
        Term::Const(c) => {
            out.insert(c.clone());
        }
        Term::Var(_) | Term::Kind | Term::Type => {}
        Term::App(f, a) => {
            constants(f, out);
            constants(a, out);
        }
        Term::Lam(_, a, b) | Term::Pi(_, a, b) => {
            constants(a, out);
            constants(b, out);
        }
    }
}

pub fn size(t: &Tm) -> usize {
    match &**t {
        Term::Var(_) | Term::Kind | Term::Type | Term::Const(_) => 1,
        Term::App(f, a) => 1 + size(f) + size(a),
        Term::Lam(_, a, b) | Term::Pi(_, a, b) => 1 + size(a) + size(b),
    }
}

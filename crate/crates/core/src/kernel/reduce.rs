use std::cell::Cell;

use super::signature::{Pattern, Rule, Signature};
use super::term::{app, apps, instantiate, subst, unapply, Term, Tm};
use super::KernelError;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Weak-head reduction and conversion modulo beta, delta and the rewrite
/// rules of a signature. Every beta, delta or rule step consumes one unit of
/// the budget.
pub struct Reducer<'s> {
    pub sig: &'s Signature,
    budget: u64,
    used: Cell<u64>,
}

impl<'s> Reducer<'s> {
    pub fn new(sig: &'s Signature, budget: u64) -> Self {
        Reducer { sig, budget, used: Cell::new(0) }
    }

    /// Reduction steps performed so far.
    pub fn steps(&self) -> u64 {
        self.used.get()
    }

    fn tick(&self) -> Result<(), KernelError> {
        let n = self.used.get() + 1;
        if n > self.budget {
            return Err(KernelError::Budget(self.budget));
        }
        self.used.set(n);
        Ok(())
    }

    pub fn whnf(&self, t: &Tm) -> Result<Tm, KernelError> {
        let mut cur = t.clone();
        loop {
            let (head, mut args) = unapply(&cur);
            match &*head {
                Term::Lam(_, _, body) if !args.is_empty() => {
                    self.tick()?;
                    let rest = args.split_off(1);
                    cur = apps(subst(body, &args[0]), rest);
                }
                Term::Const(c) => {
                    let Some(k) = self.sig.get(c) else { return Ok(cur) };
                    if let Some(body) = &k.body {
                        self.tick()?;
                        cur = apps(body.clone(), args);
                        continue;
                    }
                    match self.rewrite(c, &args)? {
                        Some(next) => cur = next,
                        None => return Ok(cur),
                    }
                }
                _ => return Ok(cur),
            }
        }
    }

    /// Fires the first rule of `head` whose patterns match `args`.
    fn rewrite(&self, head: &str, args: &[Tm]) -> Result<Option<Tm>, KernelError> {
        let rules = self.sig.rules(head);
        if rules.is_empty() {
            return Ok(None);
        }
        let mut cache: Vec<Option<Tm>> = vec![None; args.len()];
        for rule in rules {
            if rule.args.len() > args.len() {
                continue;
            }
            let mut binds: Vec<Option<Tm>> = vec![None; rule.arity];
            let mut ok = true;
            for (i, p) in rule.args.iter().enumerate() {
                if !self.match_arg(p, &args[i], &mut cache[i], &mut binds)? {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            self.tick()?;
            let vals: Vec<Tm> = binds.into_iter().map(|b| b.expect("rule variable bound by lhs")).collect();
            let rhs = instantiate(&rule.rhs, &vals);
            return Ok(Some(apps(rhs, args[rule.args.len()..].iter().cloned())));
        }
        Ok(None)
    }

    fn match_arg(
        &self,
        p: &Pattern,
        arg: &Tm,
        cache: &mut Option<Tm>,
        binds: &mut [Option<Tm>],
    ) -> Result<bool, KernelError> {
        if let Pattern::Var(_) = p {
            return self.match_pattern(p, arg, binds);
        }
        if cache.is_none() {
            *cache = Some(self.whnf(arg)?);
        }
        let reduced = cache.clone().unwrap();
        self.match_pattern(p, &reduced, binds)
    }

    fn match_pattern(&self, p: &Pattern, t: &Tm, binds: &mut [Option<Tm>]) -> Result<bool, KernelError> {
        match p {
            Pattern::Var(i) => match &binds[*i] {
                Some(prev) => {
                    let prev = prev.clone();
                    self.conv(&prev, t)
                }
                None => {
                    binds[*i] = Some(t.clone());
                    Ok(true)
                }
            },
            Pattern::Const(c, pats) => {
                let t = self.whnf(t)?;
                let (head, args) = unapply(&t);
                match &*head {
                    Term::Const(h) if h == c && args.len() == pats.len() => {
                        for (p, a) in pats.iter().zip(&args) {
                            if !self.match_pattern(p, a, binds)? {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    }
                    _ => Ok(false),
                }
            }
        }
    }

    /// Convertibility modulo beta, delta and rewriting (no eta).
    pub fn conv(&self, a: &Tm, b: &Tm) -> Result<bool, KernelError> {
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((a, b)) = stack.pop() {
            if std::sync::Arc::ptr_eq(&a, &b) || a == b {
                continue;
            }
            let a = self.whnf(&a)?;
            let b = self.whnf(&b)?;
            match (&*a, &*b) {
                (Term::Kind, Term::Kind) | (Term::Type, Term::Type) => {}
                (Term::Lam(_, d1, b1), Term::Lam(_, d2, b2)) | (Term::Pi(_, d1, b1), Term::Pi(_, d2, b2)) => {
                    stack.push((d1.clone(), d2.clone()));
                    stack.push((b1.clone(), b2.clone()));
                }
                _ => {
                    let (h1, a1) = unapply(&a);
                    let (h2, a2) = unapply(&b);
                    let heads = match (&*h1, &*h2) {
                        (Term::Const(x), Term::Const(y)) => x == y,
                        (Term::Var(x), Term::Var(y)) => x == y,
                        _ => false,
                    };
                    if !heads || a1.len() != a2.len() {
                        return Ok(false);
                    }
                    stack.extend(a1.into_iter().zip(a2));
                }
            }
        }
        Ok(true)
    }

    /// Full normal form, for diagnostics and tests.
    pub fn normalize(&self, t: &Tm) -> Result<Tm, KernelError> {
        let t = self.whnf(t)?;
        Ok(match &*t {
            Term::Lam(x, a, b) => std::sync::Arc::new(Term::Lam(x.clone(), self.normalize(a)?, self.normalize(b)?)),
            Term::Pi(x, a, b) => std::sync::Arc::new(Term::Pi(x.clone(), self.normalize(a)?, self.normalize(b)?)),
            Term::App(..) => {
                let (h, args) = unapply(&t);
                let mut out = h;
                for a in args {
                    out = app(out, self.normalize(&a)?);
                }
                out
            }
            _ => t.clone(),
        })
    }
}

/// True iff two rule left-hand sides can match a common term.
pub fn rules_overlap(r1: &Rule, r2: &Rule) -> bool {
    #[derive(Clone, Copy)]
    enum Side {
        L,
        R,
    }
    type Binds<'a> = Vec<Option<(Side, &'a Pattern)>>;
    fn resolve<'a>(p: &'a Pattern, side: Side, b1: &Binds<'a>, b2: &Binds<'a>) -> (Side, &'a Pattern) {
        let mut cur = (side, p);
        loop {
            match cur.1 {
                Pattern::Var(i) => {
                    let slot = match cur.0 {
                        Side::L => &b1[*i],
                        Side::R => &b2[*i],
                    };
                    match slot {
                        Some(next) => cur = *next,
                        None => return cur,
                    }
                }
                Pattern::Const(..) => return cur,
            }
        }
    }
    fn same_var(a: (Side, &Pattern), b: (Side, &Pattern)) -> bool {
        match (a, b) {
            ((Side::L, Pattern::Var(i)), (Side::L, Pattern::Var(j))) => i == j,
            ((Side::R, Pattern::Var(i)), (Side::R, Pattern::Var(j))) => i == j,
            _ => false,
        }
    }
    fn unify<'a>(
        a: (Side, &'a Pattern),
        b: (Side, &'a Pattern),
        b1: &mut Binds<'a>,
        b2: &mut Binds<'a>,
        fuel: &mut usize,
    ) -> bool {
        if *fuel == 0 {
            // Unresolved: treat as overlapping, which is the safe answer.
            return true;
        }
        *fuel -= 1;
        let a = resolve(a.1, a.0, b1, b2);
        let b = resolve(b.1, b.0, b1, b2);
        if same_var(a, b) {
            return true;
        }
        match (a, b) {
            ((s, Pattern::Var(i)), other) | (other, (s, Pattern::Var(i))) => {
                match s {
                    Side::L => b1[*i] = Some(other),
                    Side::R => b2[*i] = Some(other),
                }
                true
            }
            ((sa, Pattern::Const(c, xs)), (sb, Pattern::Const(d, ys))) => {
                c == d && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| unify((sa, x), (sb, y), b1, b2, fuel))
            }
        }
    }
    if r1.head != r2.head {
        return false;
    }
    let mut b1: Binds = vec![None; r1.arity];
    let mut b2: Binds = vec![None; r2.arity];
    let mut fuel = 10_000;
    r1.args.iter().zip(&r2.args).all(|(x, y)| unify((Side::L, x), (Side::R, y), &mut b1, &mut b2, &mut fuel))
}

use std::sync::Arc;
use std::time::{Duration, Instant};

use super::reduce::{rules_overlap, Reducer, DEFAULT_BUDGET};
use super::signature::{Constant, Pattern, Rule, Signature};
use super::term::{subst, unapply, Name, Term, Tm};
use super::typing::{Checker, Ctx};
use super::KernelError;

/// A resolved top-level entry of a proof script.
#[derive(Debug, Clone)]
pub enum Entry {
    /// `name : ty.` or, when definable, `def name : ty.` (a symbol that
    /// may head rewrite rules).
    Decl { name: Name, ty: Tm, definable: bool },
    /// `def name : ty := body.`
    Def { name: Name, ty: Tm, body: Tm },
    /// `[ctx] lhs --> rhs.` Context variables are de Bruijn indices, the
    /// last one being index 0.
    Rule { ctx: Vec<Name>, lhs: Tm, rhs: Tm },
}

impl Entry {
    pub fn label(&self) -> String {
        match self {
            Entry::Decl { name, .. } | Entry::Def { name, .. } => name.to_string(),
            Entry::Rule { lhs, .. } => match &*unapply(lhs).0 {
                Term::Const(c) => format!("rule {c}"),
                _ => "rule".to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Reduction steps allowed per entry.
    pub budget: u64,
    /// Keep checking after a failed entry instead of stopping.
    pub keep_going: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { budget: DEFAULT_BUDGET, keep_going: false }
    }
}

#[derive(Debug, Clone)]
pub struct EntryStatus {
    pub label: String,
    pub error: Option<KernelError>,
    pub steps: u64,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub entries: Vec<EntryStatus>,
    pub steps: u64,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.error.is_none())
    }

    pub fn first_error(&self) -> Option<(&str, &KernelError)> {
        self.entries.iter().find_map(|e| e.error.as_ref().map(|err| (e.label.as_str(), err)))
    }

    pub fn budget_exhausted(&self) -> bool {
        self.entries.iter().any(|e| matches!(e.error, Some(KernelError::Budget(_))))
    }
}

/// Checks entries in order against a growing signature.
pub fn check_entries(entries: &[Entry], opts: CheckOptions) -> (Signature, CheckReport) {
    let start = Instant::now();
    let mut sig = Signature::new();
    let mut statuses = Vec::with_capacity(entries.len());
    let mut total = 0;
    for e in entries {
        let (res, steps) = check_entry(&mut sig, e, opts.budget);
        total += steps;
        let failed = res.is_err();
        statuses.push(EntryStatus { label: e.label(), error: res.err(), steps });
        if failed && !opts.keep_going {
            break;
        }
    }
    let report = CheckReport { entries: statuses, steps: total, elapsed: start.elapsed() };
    (sig, report)
}

/// Checks one entry and, on success, adds it to `sig`. A failed declaration
/// or definition whose name is fresh is still added with its stated type,
/// so that later entries can be checked.
pub fn check_entry(sig: &mut Signature, e: &Entry, budget: u64) -> (Result<(), KernelError>, u64) {
    let (res, steps, addition) = {
        let red = Reducer::new(sig, budget);
        let res = check_in(&red, e);
        let addition = match (e, &res) {
            (Entry::Decl { name, ty, definable }, _) => {
                Some(Constant { name: name.clone(), ty: ty.clone(), body: None, definable: *definable })
            }
            (Entry::Def { name, ty, body }, Ok(_)) => {
                Some(Constant { name: name.clone(), ty: ty.clone(), body: Some(body.clone()), definable: false })
            }
            (Entry::Def { name, ty, .. }, Err(_)) => {
                Some(Constant { name: name.clone(), ty: ty.clone(), body: None, definable: false })
            }
            (Entry::Rule { .. }, _) => None,
        };
        (res, red.steps(), addition)
    };
    let res = match res {
        Ok(Some(rule)) => {
            sig.add_rule(rule);
            Ok(())
        }
        Ok(None) => Ok(()),
        Err(err) => Err(err),
    };
    if let Some(c) = addition {
        if !sig.contains(&c.name) {
            sig.insert(c);
        }
    }
    (res, steps)
}

fn check_in(red: &Reducer<'_>, e: &Entry) -> Result<Option<Rule>, KernelError> {
    let sig = red.sig;
    match e {
        Entry::Decl { name, ty, .. } => {
            fresh_name(sig, name)?;
            Checker::new(red).sort_of(ty)?;
            Ok(None)
        }
        Entry::Def { name, ty, body } => {
            fresh_name(sig, name)?;
            let mut c = Checker::new(red);
            if matches!(&*c.sort_of(ty)?, Term::Kind) {
                return Err(KernelError::Rule(format!("definition {name} has a kind as type")));
            }
            c.check(body, ty)?;
            Ok(None)
        }
        Entry::Rule { ctx, lhs, rhs } => check_rule(red, ctx, lhs, rhs).map(Some),
    }
}

fn fresh_name(sig: &Signature, name: &str) -> Result<(), KernelError> {
    if sig.contains(name) {
        Err(KernelError::Redeclared(name.to_string()))
    } else {
        Ok(())
    }
}

fn pattern_term(p: &Pattern) -> Tm {
    match p {
        Pattern::Var(i) => Arc::new(Term::Var(*i)),
        Pattern::Const(c, args) => {
            args.iter().fold(Arc::new(Term::Const(c.clone())), |f, a| Arc::new(Term::App(f, pattern_term(a))))
        }
    }
}

/// Assigns to each pattern variable the domain type of the first position
/// it occupies.
fn pattern_var_types(
    red: &Reducer<'_>,
    head_ty: &Tm,
    args: &[Pattern],
    types: &mut [Option<Tm>],
) -> Result<(), KernelError> {
    let mut ty = head_ty.clone();
    for p in args {
        let t = red.whnf(&ty)?;
        let Term::Pi(_, dom, cod) = &*t else {
            return Err(KernelError::Rule("left-hand side is over-applied".into()));
        };
        match p {
            Pattern::Var(i) => {
                if types[*i].is_none() {
                    types[*i] = Some(dom.clone());
                }
            }
            Pattern::Const(c, sub) => {
                let k = red.sig.get(c).ok_or_else(|| KernelError::Rule(format!("unknown constant {c} in pattern")))?;
                pattern_var_types(red, &k.ty, sub, types)?;
            }
        }
        ty = subst(cod, &pattern_term(p));
    }
    Ok(())
}

fn check_rule(red: &Reducer<'_>, ctx: &[Name], lhs: &Tm, rhs: &Tm) -> Result<Rule, KernelError> {
    let n = ctx.len();
    let (head, args) = unapply(lhs);
    let Term::Const(h) = &*head else {
        return Err(KernelError::Rule("left-hand side must be headed by a constant".into()));
    };
    let k = red.sig.get(h).ok_or_else(|| KernelError::Rule(format!("unknown head symbol {h}")))?;
    if !k.definable || k.body.is_some() {
        return Err(KernelError::Rule(format!("{h} is not a definable symbol")));
    }
    let pats: Vec<Pattern> = args
        .iter()
        .map(|a| Pattern::from_term(a, n))
        .collect::<Option<_>>()
        .ok_or_else(|| KernelError::Rule("left-hand side is not a first-order pattern".into()))?;
    let mut seen = Vec::new();
    pats.iter().for_each(|p| p.vars(&mut seen));
    for i in 0..n {
        if !seen.contains(&i) {
            return Err(KernelError::Rule(format!(
                "rule variable {} does not occur in the left-hand side",
                ctx[n - 1 - i]
            )));
        }
    }
    let mut types = vec![None; n];
    pattern_var_types(red, &k.ty, &pats, &mut types)?;
    let mut c = Checker::new(red);
    let mut local = Ctx::new();
    for (pos, name) in ctx.iter().enumerate() {
        let idx = n - 1 - pos;
        let ty = types[idx].clone().expect("every rule variable occurs in a pattern position");
        local.push_at(name.clone(), ty, n);
    }
    c.ctx = local;
    let lhs_ty = c.infer(lhs)?;
    c.check(rhs, &lhs_ty)?;
    let rule = Rule { head: h.clone(), arity: n, args: pats, rhs: rhs.clone() };
    if let Some(other) = red.sig.rules(h).iter().find(|r| rules_overlap(r, &rule)) {
        let _ = other;
        return Err(KernelError::Rule(format!("rule overlaps an existing rule for {h}")));
    }
    Ok(rule)
}

//! Proof terms for derivation steps.
//!
//! Every step `N` of a trace becomes `step_N`, whose type is the encoding of
//! its conclusion under its conditions. Substitutions are never read from
//! the trace: they are recomputed from the participating literals and
//! fitted onto the stated conclusion.

mod avatar;
mod rules;

use std::collections::{BTreeMap, HashMap};

use crate::dk::{Document, Expr, Item, SectionKind};
use crate::drv::{RuleName, Step, Trace};
use crate::embedding::{
    self, avatar_clause_type, clause_binders, condition_type, deep_literal, prelude_items, prf, prf_bot,
    shallow_literal, shorthand_items, sort_expr, split_name, step_name, term_expr, Condition,
};
use crate::fol::{match_literals, rename_apart, Atom, Clause, Literal, Sort, Substitution, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("step {id}: corrupted trace: {msg}")]
    Corrupted { id: u64, msg: String },
    #[error("step {id}: {msg}")]
    Malformed { id: u64, msg: String },
}

/// A step proved by an unchecked axiom.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Sorry {
    pub step: u64,
    pub rule: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct TranslationReport {
    pub steps: usize,
    pub sorries: Vec<Sorry>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Translation {
    pub document: Document,
    pub report: TranslationReport,
}

#[derive(Debug, Clone, Copy)]
pub struct TranslateOptions {
    /// Emit the header banner comment.
    pub banner: bool,
}

impl Default for TranslateOptions {
    fn default() -> Self {
        TranslateOptions { banner: true }
    }
}

/// What a translated step establishes.
#[derive(Debug, Clone)]
enum Proved {
    Clause {
        clause: Clause,
        conds: Vec<Condition>,
    },
    /// The SAT clause `sp_1 ∨ … ∨ sp_k` under conditions.
    Split {
        conds: Vec<Condition>,
        splits: Vec<u64>,
    },
    Definition,
}

impl Proved {
    fn conds(&self) -> &[Condition] {
        match self {
            Proved::Clause { conds, .. } | Proved::Split { conds, .. } => conds,
            Proved::Definition => &[],
        }
    }

    fn ty(&self) -> Expr {
        match self {
            Proved::Clause { clause, conds } => avatar_clause_type(clause, conds),
            Proved::Split { conds, splits } => split_type(conds, splits),
            Proved::Definition => unreachable!("definitions have no step constant"),
        }
    }
}

/// `‖sp‖ = prf sp -> prf bot`.
fn split_literal(split: u64) -> Expr {
    Expr::arrow(prf(Expr::ident(split_name(split))), prf_bot())
}

fn split_type(conds: &[Condition], splits: &[u64]) -> Expr {
    let args = conds.iter().map(condition_type).chain(splits.iter().map(|&s| split_literal(s)));
    Expr::arrows(args, prf_bot())
}

fn cond_hyp(c: &Condition) -> String {
    if c.positive {
        format!("h{}", c.split)
    } else {
        format!("hn{}", c.split)
    }
}

fn lit_hyp(i: usize) -> String {
    format!("l{}", i + 1)
}

/// The conclusion being proved and its bound hypotheses.
struct Goal<'a> {
    clause: &'a Clause,
    conds: &'a [Condition],
}

impl Goal<'_> {
    fn cond_binders(&self) -> Vec<(String, Expr)> {
        self.conds.iter().map(|c| (cond_hyp(c), condition_type(c))).collect()
    }

    fn binders(&self) -> Vec<(String, Expr)> {
        let mut bs = self.cond_binders();
        bs.extend(clause_binders(self.clause));
        bs.extend(self.clause.literals.iter().enumerate().map(|(i, l)| (lit_hyp(i), shallow_literal(l))));
        bs
    }

    /// A proof of `‖m‖` from the bound literal hypotheses, repairing the
    /// orientation of an equation when needed.
    fn lit(&self, m: &Literal) -> Result<Expr, String> {
        let lits = &self.clause.literals;
        if let Some(i) = lits.iter().position(|l| l == m) {
            return Ok(Expr::ident(lit_hyp(i)));
        }
        if m.is_equation() {
            let flipped = m.flipped();
            if let Some(i) = lits.iter().position(|l| *l == flipped) {
                return Ok(embedding::repair_orientation(&lits[i], Expr::ident(lit_hyp(i))));
            }
        }
        Err(format!("literal {m} is not in the conclusion"))
    }

    fn close(&self, body: Expr) -> Expr {
        Expr::lams(self.binders(), body)
    }
}

/// `θ = ρ ∘ σ` where `σ` is recomputed from the premises and `ρ` fits the
/// recomputed conclusion onto the stated one. Variables left over by both
/// are instantiated with `star`, sort variables with `iota`.
struct Inst {
    sigma: Substitution,
    rho: Substitution,
}

impl Inst {
    fn new(sigma: Substitution, rho: Substitution) -> Inst {
        Inst { sigma, rho }
    }

    fn close_sort(&self, s: &Sort) -> Sort {
        match s {
            Sort::Var(v) => self.rho.sorts.get(v).cloned().unwrap_or_else(Sort::iota),
            Sort::App(h, args) => Sort::App(h.clone(), args.iter().map(|a| self.close_sort(a)).collect()),
        }
    }

    fn close_term(&self, t: &Term) -> Term {
        match t {
            Term::Var { name, sort } => {
                self.rho.terms.get(name).cloned().unwrap_or_else(|| Term::inhabitant(self.close_sort(sort)))
            }
            Term::App { head, sort_args, args, sort } => Term::App {
                head: head.clone(),
                sort_args: sort_args.iter().map(|s| self.close_sort(s)).collect(),
                args: args.iter().map(|a| self.close_term(a)).collect(),
                sort: self.close_sort(sort),
            },
        }
    }

    fn close_literal(&self, l: &Literal) -> Literal {
        let atom = match &l.atom {
            Atom::Pred { head, sort_args, args } => Atom::Pred {
                head: head.clone(),
                sort_args: sort_args.iter().map(|s| self.close_sort(s)).collect(),
                args: args.iter().map(|a| self.close_term(a)).collect(),
            },
            Atom::Eq { lhs, rhs, sort } => {
                Atom::Eq { lhs: self.close_term(lhs), rhs: self.close_term(rhs), sort: self.close_sort(sort) }
            }
        };
        Literal { positive: l.positive, atom }
    }

    fn sort(&self, s: &Sort) -> Sort {
        self.close_sort(&self.sigma.apply_sort(s))
    }

    fn term(&self, t: &Term) -> Result<Term, String> {
        Ok(self.close_term(&self.sigma.apply(t).map_err(|e| e.to_string())?))
    }

    fn literal(&self, l: &Literal) -> Result<Literal, String> {
        Ok(self.close_literal(&self.sigma.apply_literal(l).map_err(|e| e.to_string())?))
    }
}

/// A premise clause, renamed apart from the other premises of its step.
struct Premise {
    id: u64,
    clause: Clause,
    conds: Vec<Condition>,
}

/// Continuation override for one premise literal.
type Special<'a> = dyn FnMut(usize, &Literal) -> Result<Option<Expr>, String> + 'a;

impl Premise {
    /// `step_p h… θ(sorts) θ(vars) conts`.
    fn apply(&self, inst: &Inst, conts: Vec<Expr>) -> Result<Expr, String> {
        let mut args: Vec<Expr> = self.conds.iter().map(|c| Expr::ident(cond_hyp(c))).collect();
        for v in &self.clause.sort_vars {
            args.push(sort_expr(&inst.sort(&Sort::Var(v.clone()))));
        }
        for (v, s) in &self.clause.term_vars {
            args.push(term_expr(&inst.term(&Term::var(v.clone(), s.clone()))?));
        }
        args.extend(conts);
        Ok(Expr::app(Expr::ident(step_name(self.id)), args))
    }

    /// Instantiated literals, each discharged by a conclusion hypothesis
    /// unless `special` provides its continuation.
    fn conts(&self, goal: &Goal<'_>, inst: &Inst, special: &mut Special<'_>) -> Result<Vec<Expr>, String> {
        let mut out = Vec::new();
        for (k, l) in self.clause.literals.iter().enumerate() {
            let m = inst.literal(l)?;
            match special(k, &m)? {
                Some(e) => out.push(e),
                None => out.push(goal.lit(&m)?),
            }
        }
        Ok(out)
    }
}

/// Everything a rule builder needs about the current step.
struct StepCx<'a> {
    step: &'a Step,
    env: &'a Env,
}

impl StepCx<'_> {
    fn goal(&self) -> Goal<'_> {
        Goal { clause: &self.step.clause, conds: &self.step.conditions }
    }

    fn premise(&self, id: u64) -> Result<Premise, String> {
        match self.env.proved.get(&id) {
            Some(Proved::Clause { clause, conds }) => Ok(Premise { id, clause: clause.clone(), conds: conds.clone() }),
            Some(Proved::Split { .. }) => Err(format!("premise {id} is a SAT clause")),
            Some(Proved::Definition) => Err(format!("premise {id} is a split definition")),
            None => Err(format!("premise {id} is unknown")),
        }
    }

    fn one_premise(&self) -> Result<Premise, String> {
        match self.step.premises.as_slice() {
            [p] => self.premise(*p),
            ps => Err(format!("expected one premise, got {}", ps.len())),
        }
    }

    /// The two premises, the second renamed apart from the first.
    fn two_premises(&self) -> Result<(Premise, Premise), String> {
        let [a, b] = self.step.premises.as_slice() else {
            return Err(format!("expected two premises, got {}", self.step.premises.len()));
        };
        let p1 = self.premise(*a)?;
        let mut p2 = self.premise(*b)?;
        let (_, renamed, _) = rename_apart(&p1.clause, &p2.clause);
        p2.clause = renamed;
        Ok((p1, p2))
    }

    /// Fits a recomputed conclusion onto the stated one.
    fn fit(&self, recomputed: &[Literal]) -> Option<Substitution> {
        match_literals(&Substitution::new(), recomputed, &self.step.clause.literals).map(|(s, _)| s)
    }

    fn hint(&self, group: usize) -> Option<&[usize]> {
        self.step.extras.lits.as_ref().and_then(|g| g.get(group)).map(|g| g.as_slice())
    }
}

/// A proof of `eq S y x` from `proof : prf (eq S x y)`.
fn sym(eq: &Literal, proof: Expr) -> Expr {
    match &eq.atom {
        Atom::Eq { lhs, rhs, sort } => {
            Expr::app(Expr::ident("sym"), [sort_expr(sort), term_expr(lhs), term_expr(rhs), proof])
        }
        Atom::Pred { .. } => proof,
    }
}

/// `λz : El S. ⌜l⌝`, eta-reduced when the hole is the last argument.
fn context(z: &str, sort: &Sort, l: &Literal) -> Expr {
    let body = deep_literal(l);
    if let Expr::App(f, args) = &body {
        if let Some((last, init)) = args.split_last() {
            if *last == Expr::ident(z) && !f.mentions(z) && !init.iter().any(|a| a.mentions(z)) {
                return Expr::app((**f).clone(), init.iter().cloned());
            }
        }
    }
    Expr::lam(z, embedding::el(sort_expr(sort)), body)
}

#[derive(Default)]
struct Env {
    proved: HashMap<u64, Proved>,
    /// Split components by split id.
    splits: BTreeMap<u64, Clause>,
}

/// Output of one step.
#[derive(Default)]
struct Emitted {
    aux: Vec<Item>,
    main: Vec<Item>,
}

/// Translates a whole trace into a script.
pub fn translate(trace: &Trace, opts: TranslateOptions) -> Result<Translation, TranslateError> {
    let mut doc = Document::skeleton(opts.banner);
    doc.section_mut(SectionKind::Encoding).extend(prelude_items().iter().cloned());
    doc.section_mut(SectionKind::Shorthands).extend(shorthand_items().iter().cloned());
    doc.section_mut(SectionKind::Signature).extend(trace.symbols.items());
    let mut env = Env::default();
    let mut report = TranslationReport::default();
    for step in &trace.steps {
        let out = translate_step(step, &mut env, &mut report)?;
        let section = if step.rule == RuleName::Input { SectionKind::Inputs } else { SectionKind::Derivation };
        let items = doc.section_mut(section);
        items.extend(out.aux);
        items.extend(out.main);
        report.steps += 1;
    }
    Ok(Translation { document: doc, report })
}

fn translate_step(step: &Step, env: &mut Env, report: &mut TranslationReport) -> Result<Emitted, TranslateError> {
    let id = step.id;
    let corrupted = |msg: String| TranslateError::Corrupted { id, msg };
    let malformed = |msg: String| TranslateError::Malformed { id, msg };

    for p in &step.premises {
        let Some(proved) = env.proved.get(p) else {
            return Err(corrupted(format!("premise {p} is unknown")));
        };
        if matches!(proved, Proved::Definition) {
            return Err(malformed(format!("premise {p} is a split definition")));
        }
        if let Some(c) = proved.conds().iter().find(|c| !step.conditions.contains(c)) {
            return Err(corrupted(format!("condition {c} of premise {p} is missing from the conclusion")));
        }
    }
    let union: Vec<Condition> = step.premises.iter().flat_map(|p| env.proved[p].conds().to_vec()).collect();
    if !step.premises.is_empty() && step.conditions.iter().any(|c| !union.contains(c)) {
        report.notes.push(format!("step {id}: conditions strictly extend those of the premises"));
    }

    let mut out = Emitted::default();
    let proved = Proved::Clause { clause: step.clause.clone(), conds: step.conditions.clone() };
    let cx = StepCx { step, env };
    let body = match &step.rule {
        RuleName::Input => {
            let ty = proved.ty();
            env.proved.insert(id, proved);
            out.main.push(Item::Decl { name: step_name(id), ty, definable: false });
            return Ok(out);
        }
        RuleName::AvatarDefinition => {
            out.aux = avatar::definition(&cx).map_err(malformed)?;
            let sp = step.extras.sp.expect("checked by the definition builder");
            env.splits.entry(sp).or_insert_with(|| step.clause.clone());
            env.proved.insert(id, Proved::Definition);
            return Ok(out);
        }
        RuleName::AvatarSplit => {
            let (aux, defs, splits, body) = avatar::split(&cx).map_err(corrupted)?;
            env.splits.extend(defs);
            let proved = Proved::Split { conds: step.conditions.clone(), splits };
            out.aux = aux;
            out.main.push(Item::Def { name: step_name(id), ty: proved.ty(), body });
            env.proved.insert(id, proved);
            return Ok(out);
        }
        RuleName::Resolution | RuleName::SubsumptionResolution => rules::resolution(&cx),
        RuleName::Factoring => rules::factoring(&cx),
        RuleName::EqualityResolution => rules::equality_resolution(&cx),
        RuleName::Superposition => rules::superposition(&cx, rules::Mode::Unify, step.extras.sim),
        RuleName::SimultaneousSuperposition => rules::superposition(&cx, rules::Mode::Unify, Some(true)),
        RuleName::Demodulation => rules::superposition(&cx, rules::Mode::Match, step.extras.sim),
        RuleName::AvatarComponent => avatar::component(&cx),
        RuleName::AvatarContradiction => avatar::contradiction(&cx),
        RuleName::Unsupported(_) => {
            out.main = sorry(step, env);
            report.sorries.push(Sorry { step: id, rule: step.rule.to_string() });
            env.proved.insert(id, proved);
            return Ok(out);
        }
    };
    let body = body.map_err(corrupted)?;
    out.main.push(Item::Def { name: step_name(id), ty: proved.ty(), body });
    env.proved.insert(id, proved);
    Ok(out)
}

/// `sorry_N : T_p1 -> … -> T_N.` and `step_N := sorry_N step_p1 …`.
fn sorry(step: &Step, env: &Env) -> Vec<Item> {
    let ty = avatar_clause_type(&step.clause, &step.conditions);
    let premise_tys = step.premises.iter().map(|p| env.proved[p].ty());
    let name = embedding::sorry_name(step.id);
    let body = Expr::app(Expr::ident(&name), step.premises.iter().map(|&p| Expr::ident(step_name(p))));
    vec![
        Item::Note(format!("sorry: step {} rule {}", step.id, step.rule)),
        Item::Decl { name, ty: Expr::arrows(premise_tys, ty.clone()), definable: false },
        Item::Def { name: step_name(step.id), ty, body },
    ]
}

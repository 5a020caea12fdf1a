//! AVATAR definitions, splits, components and contradictions.

use std::collections::{BTreeMap, HashSet};

use super::{cond_hyp, Inst, StepCx};
use crate::dk::{Expr, Item};
use crate::embedding::{
    condition_type, deep_literal, el, not, prf, repair_orientation, sort_expr, split_definition, split_name, step_name,
    term_expr, var_name, Condition,
};
use crate::fol::{clauses_equivalent, match_literals, Clause, Sort, Substitution, Term};

fn same_component(a: &Clause, b: &Clause) -> bool {
    clauses_equivalent(&a.literals, &b.literals)
}

/// `sp_N : Prop` with its unfolding rule, unless `N` already names an
/// equivalent component.
pub(super) fn definition(cx: &StepCx<'_>) -> Result<Vec<Item>, String> {
    let sp = cx.step.extras.sp.ok_or("missing sp= for a split definition")?;
    if !cx.step.premises.is_empty() {
        return Err("a split definition has no premises".into());
    }
    match cx.env.splits.get(&sp) {
        Some(c) if same_component(c, &cx.step.clause) => Ok(Vec::new()),
        Some(c) => Err(format!("split {sp} is already defined as {c}")),
        None => Ok(split_definition(sp, &cx.step.clause)),
    }
}

/// Split of a clause into components: unpacks every `‖sp_i‖` hypothesis and
/// applies the premise to the unpacked variables and literals. Returns the
/// definitions introduced on the fly, the split ids and the proof.
#[allow(clippy::type_complexity)]
pub(super) fn split(cx: &StepCx<'_>) -> Result<(Vec<Item>, Vec<(u64, Clause)>, Vec<u64>, Expr), String> {
    let p = cx.one_premise()?;
    let groups = cx.step.extras.split.as_ref().ok_or("missing split= partition")?;
    let n = p.clause.literals.len();
    let mut seen = vec![false; n];
    for i in groups.iter().flat_map(|(_, ls)| ls) {
        if *i >= n || std::mem::replace(&mut seen[*i], true) {
            return Err(format!("literal {i} is not covered exactly once by the partition"));
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(format!("literal {i} is not covered by the partition"));
    }
    let mut owners: BTreeMap<String, usize> = BTreeMap::new();
    for (g, (_, ls)) in groups.iter().enumerate() {
        let part = Clause::new(ls.iter().map(|&i| p.clause.literals[i].clone()).collect());
        let names = part.term_vars.iter().map(|(v, _)| v).chain(&part.sort_vars);
        for v in names {
            if let Some(h) = owners.insert(v.clone(), g) {
                if h != g {
                    return Err(format!("variable {v} is shared between components"));
                }
            }
        }
    }

    // Definitions, introduced here when the trace does not define them.
    let mut aux = Vec::new();
    let mut fresh: Vec<(u64, Clause)> = Vec::new();
    let mut components = Vec::new();
    for (sp, ls) in groups {
        let part = Clause::new(ls.iter().map(|&i| p.clause.literals[i].clone()).collect());
        let known = cx.env.splits.get(sp).or_else(|| fresh.iter().find(|(s, _)| s == sp).map(|(_, c)| c));
        let def = match known {
            Some(c) if same_component(c, &part) => c.clone(),
            Some(c) => return Err(format!("component {part} does not match split {sp} = {c}")),
            None => {
                aux.extend(split_definition(*sp, &part));
                fresh.push((*sp, part.clone()));
                part
            }
        };
        components.push(def);
    }

    // Variables bound by several unpackings get a group suffix.
    let mut count: BTreeMap<String, usize> = BTreeMap::new();
    for c in &components {
        let vs: HashSet<&String> = c.term_vars.iter().map(|(v, _)| v).chain(&c.sort_vars).collect();
        for v in vs {
            *count.entry(v.clone()).or_default() += 1;
        }
    }
    let renamed: Vec<Clause> = components
        .iter()
        .enumerate()
        .map(|(g, c)| {
            let f = |v: &str| (count[v] > 1).then(|| format!("{v}_{}", g + 1));
            c.rename(&f, &f)
        })
        .collect();

    // Match each group of premise literals onto its unpacked component.
    let mut sigma = Substitution::new();
    let mut conts: Vec<Option<Expr>> = vec![None; n];
    for (g, ((_, ls), comp)) in groups.iter().zip(&renamed).enumerate() {
        let pats: Vec<_> = ls.iter().map(|&i| p.clause.literals[i].clone()).collect();
        let (sub, placement) = match_literals(&Substitution::new(), &pats, &comp.literals)
            .ok_or_else(|| format!("component {} does not match its definition", g + 1))?;
        sigma.sorts.extend(sub.sorts);
        sigma.terms.extend(sub.terms);
        for (&i, (t, flip)) in ls.iter().zip(placement) {
            let hyp = Expr::ident(format!("l{}_{}", g + 1, t + 1));
            conts[i] = Some(if flip { repair_orientation(&comp.literals[t], hyp) } else { hyp });
        }
    }
    let mut rho = Substitution::new();
    for c in &renamed {
        for v in &c.sort_vars {
            rho.sorts.insert(v.clone(), Sort::Var(v.clone()));
        }
        for (v, s) in &c.term_vars {
            rho.terms.insert(v.clone(), Term::var(v.clone(), s.clone()));
        }
    }
    let theta = Inst::new(sigma, rho);
    let mut body = p.apply(&theta, conts.into_iter().map(|c| c.expect("partition covers every literal")).collect())?;

    for (g, comp) in renamed.iter().enumerate().rev() {
        let mut binders: Vec<(String, Expr)> = Vec::new();
        binders.extend(comp.sort_vars.iter().map(|v| (var_name(v), Expr::ident("Set"))));
        binders.extend(comp.term_vars.iter().map(|(v, s)| (var_name(v), el(sort_expr(s)))));
        for (t, l) in comp.literals.iter().enumerate() {
            binders.push((format!("l{}_{}", g + 1, t + 1), prf(not(deep_literal(l)))));
        }
        body = Expr::app(Expr::ident(format!("s{}", g + 1)), [Expr::lams(binders, body)]);
    }
    let mut binders: Vec<(String, Expr)> =
        cx.step.conditions.iter().map(|c| (cond_hyp(c), condition_type(c))).collect();
    for (g, (sp, _)) in groups.iter().enumerate() {
        binders.push((format!("s{}", g + 1), super::split_literal(*sp)));
    }
    let splits = groups.iter().map(|(sp, _)| *sp).collect();
    Ok((aux, fresh, splits, Expr::lams(binders, body)))
}

/// Component clause `C ← sp`: unfolds `sp` and re-folds it into the
/// clause's continuation form.
pub(super) fn component(cx: &StepCx<'_>) -> Result<Expr, String> {
    let sp = cx.step.extras.sp.ok_or("missing sp= for a component")?;
    let def = cx.env.splits.get(&sp).ok_or_else(|| format!("split {sp} is not defined"))?;
    let expected = [Condition { split: sp, positive: true }];
    if cx.step.conditions != expected {
        return Err(format!("a component of split {sp} must be conditional on exactly {sp}"));
    }
    let goal = cx.goal();
    let (rho, _) = match_literals(&Substitution::new(), &def.literals, &goal.clause.literals)
        .ok_or_else(|| format!("the conclusion is not the component of split {sp}"))?;
    let inst = Inst::new(Substitution::new(), rho);
    let mut args = Vec::new();
    for v in &def.sort_vars {
        args.push(sort_expr(&inst.sort(&Sort::Var(v.clone()))));
    }
    for (v, s) in &def.term_vars {
        args.push(term_expr(&inst.term(&Term::var(v.clone(), s.clone()))?));
    }
    for l in &def.literals {
        args.push(goal.lit(&inst.literal(l)?)?);
    }
    let psp = Expr::app(Expr::ident("psp"), args);
    let unpack = Expr::lam("psp", prf(Expr::ident(split_name(sp))), psp);
    Ok(goal.close(Expr::app(Expr::ident(cond_hyp(&expected[0])), [unpack])))
}

/// Conditional contradiction: the premise itself, read as a SAT clause.
pub(super) fn contradiction(cx: &StepCx<'_>) -> Result<Expr, String> {
    let p = cx.one_premise()?;
    if !p.clause.is_empty() {
        return Err("the premise of a contradiction must be the empty clause".into());
    }
    if !cx.step.clause.is_empty() {
        return Err("a contradiction concludes the empty clause".into());
    }
    if p.conds == cx.step.conditions {
        return Ok(Expr::ident(step_name(p.id)));
    }
    let goal = cx.goal();
    let inst = Inst::new(Substitution::new(), Substitution::new());
    Ok(goal.close(p.apply(&inst, Vec::new())?))
}

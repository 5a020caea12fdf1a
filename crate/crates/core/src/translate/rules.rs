//! Resolution, factoring, equality resolution and rewriting inferences.

use super::{context, sym, Goal, Inst, Premise, StepCx};
use crate::dk::Expr;
use crate::embedding::{deep_literal, prf, sort_expr, term_expr};
use crate::fol::{match_term, unify, unify_atoms, Atom, Literal, Substitution, Term};

/// Hinted candidates first, then every candidate.
fn ordered<T: PartialEq + Clone>(hint: Option<T>, all: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = hint.into_iter().collect();
    for c in all {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn apply_all(sigma: &Substitution, lits: &[Literal], skip: Option<usize>) -> Result<Vec<Literal>, String> {
    lits.iter()
        .enumerate()
        .filter(|(k, _)| Some(*k) != skip)
        .map(|(_, l)| sigma.apply_literal(l).map_err(|e| e.to_string()))
        .collect()
}

/// Resolution and subsumption resolution: the resolved literal of the main
/// premise is discharged by applying the side premise.
pub(super) fn resolution(cx: &StepCx<'_>) -> Result<Expr, String> {
    let (main, side) = cx.two_premises()?;
    let hint = match (cx.hint(0), cx.hint(1)) {
        (Some([i]), Some([j])) => Some((*i, *j)),
        _ => None,
    };
    let n1 = main.clause.literals.len();
    let n2 = side.clause.literals.len();
    let all = (0..n1).flat_map(|i| (0..n2).map(move |j| (i, j)));
    for (i, j) in ordered(hint, all) {
        let (a, b) = (&main.clause.literals[i], &side.clause.literals[j]);
        if a.positive == b.positive {
            continue;
        }
        let Ok((sigma, flip)) = unify_atoms(&a.atom, &b.atom) else { continue };
        let mut recomputed = apply_all(&sigma, &main.clause.literals, Some(i))?;
        recomputed.extend(apply_all(&sigma, &side.clause.literals, Some(j))?);
        let Some(rho) = cx.fit(&recomputed) else { continue };
        return build_resolution(&cx.goal(), &Inst::new(sigma, rho), &main, i, &side, j, flip);
    }
    Err("no complementary pair of literals yields the conclusion".into())
}

fn build_resolution(
    goal: &Goal<'_>,
    inst: &Inst,
    main: &Premise,
    i: usize,
    side: &Premise,
    j: usize,
    flip: bool,
) -> Result<Expr, String> {
    let a = inst.literal(&main.clause.literals[i])?;
    let b = inst.literal(&side.clause.literals[j])?;
    // `q` proves the main literal's formula, `t` the side literal's.
    let discharge = |q: Expr, t: Expr| -> Expr {
        let (neg, pos, pos_lit) = if a.positive { (t, q, &a) } else { (q, t, &b) };
        let pos = if flip { sym(pos_lit, pos) } else { pos };
        Expr::app(neg, [pos])
    };
    let q = Expr::ident("q");
    let inner_cont = if !a.positive && !flip {
        q.clone()
    } else {
        Expr::lam("t", prf(deep_literal(&b)), discharge(q.clone(), Expr::ident("t")))
    };
    let mut inner_cont = Some(inner_cont);
    let inner_conts = side.conts(goal, inst, &mut |k, _| Ok(if k == j { inner_cont.take() } else { None }))?;
    let inner = side.apply(inst, inner_conts)?;
    let mut outer_cont = Some(Expr::lam("q", prf(deep_literal(&a)), inner));
    let conts = main.conts(goal, inst, &mut |k, _| Ok(if k == i { outer_cont.take() } else { None }))?;
    Ok(goal.close(main.apply(inst, conts)?))
}

/// Factoring: both unified literals are discharged by the same hypothesis.
pub(super) fn factoring(cx: &StepCx<'_>) -> Result<Expr, String> {
    let p = cx.one_premise()?;
    let hint = match cx.hint(0) {
        Some([i, j]) => Some((*i, *j)),
        _ => None,
    };
    let n = p.clause.literals.len();
    let all = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    for (i, j) in ordered(hint, all) {
        let (a, b) = (&p.clause.literals[i], &p.clause.literals[j]);
        if i == j || a.positive != b.positive {
            continue;
        }
        let Ok((sigma, _)) = unify_atoms(&a.atom, &b.atom) else { continue };
        let recomputed = apply_all(&sigma, &p.clause.literals, None)?;
        let Some(rho) = cx.fit(&recomputed) else { continue };
        let inst = Inst::new(sigma, rho);
        let goal = cx.goal();
        let conts = p.conts(&goal, &inst, &mut |_, _| Ok(None))?;
        return Ok(goal.close(p.apply(&inst, conts)?));
    }
    Err("no pair of unifiable literals yields the conclusion".into())
}

/// Equality resolution: `s ≠ t` with `σs = σt` is discharged by `refl`.
pub(super) fn equality_resolution(cx: &StepCx<'_>) -> Result<Expr, String> {
    let p = cx.one_premise()?;
    let hint = match cx.hint(0) {
        Some([i]) => Some(*i),
        _ => None,
    };
    for i in ordered(hint, 0..p.clause.literals.len()) {
        let l = &p.clause.literals[i];
        let Atom::Eq { lhs, rhs, .. } = &l.atom else { continue };
        if l.positive {
            continue;
        }
        let Ok(sigma) = unify(lhs, rhs) else { continue };
        let recomputed = apply_all(&sigma, &p.clause.literals, Some(i))?;
        let Some(rho) = cx.fit(&recomputed) else { continue };
        let inst = Inst::new(sigma, rho);
        let goal = cx.goal();
        let m = inst.literal(l)?;
        let Atom::Eq { lhs, sort, .. } = &m.atom else { unreachable!() };
        let refl = Expr::app(Expr::ident("refl"), [sort_expr(sort), term_expr(lhs)]);
        let mut cont = Some(Expr::lam("n", prf(deep_literal(&m)), Expr::app(Expr::ident("n"), [refl])));
        let conts = p.conts(&goal, &inst, &mut |k, _| Ok(if k == i { cont.take() } else { None }))?;
        return Ok(goal.close(p.apply(&inst, conts)?));
    }
    Err("no negative equation with unifiable sides yields the conclusion".into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Mode {
    /// Superposition: unify the rewritten side with the subterm.
    Unify,
    /// Demodulation: match the rewritten side onto the subterm.
    Match,
}

#[derive(Debug, Clone, PartialEq)]
struct Rewrite {
    eq: usize,
    right_to_left: bool,
    target: usize,
    path: Vec<usize>,
    simultaneous: bool,
}

/// Superposition, simultaneous superposition and demodulation. The first
/// premise holds the equation, the second is rewritten.
pub(super) fn superposition(cx: &StepCx<'_>, mode: Mode, sim: Option<bool>) -> Result<Expr, String> {
    let (rw, tg) = cx.two_premises()?;
    let ex = &cx.step.extras;
    let sims: Vec<bool> = match sim {
        Some(s) => vec![s],
        None => vec![false, true],
    };
    let hint = match (cx.hint(0), cx.hint(1), &ex.pos) {
        (Some([i]), Some([j]), Some(path)) => Some(Rewrite {
            eq: *i,
            right_to_left: ex.orient.unwrap_or(false),
            target: *j,
            path: path.clone(),
            simultaneous: sims[0],
        }),
        _ => None,
    };
    let mut all = Vec::new();
    for (i, e) in rw.clause.literals.iter().enumerate() {
        if !(e.positive && e.is_equation()) {
            continue;
        }
        for right_to_left in [false, true] {
            for (j, t) in tg.clause.literals.iter().enumerate() {
                for path in t.positions() {
                    for &simultaneous in &sims {
                        all.push(Rewrite { eq: i, right_to_left, target: j, path: path.clone(), simultaneous });
                    }
                }
            }
        }
    }
    for c in ordered(hint, all) {
        if let Some(e) = try_rewrite(cx, mode, &rw, &tg, &c)? {
            return Ok(e);
        }
    }
    Err("no rewrite of the second premise by the first yields the conclusion".into())
}

fn sides(eq: &Literal, right_to_left: bool) -> Option<(&Term, &Term)> {
    match &eq.atom {
        Atom::Eq { lhs, rhs, .. } if right_to_left => Some((rhs, lhs)),
        Atom::Eq { lhs, rhs, .. } => Some((lhs, rhs)),
        Atom::Pred { .. } => None,
    }
}

/// A variable name unused by the literals.
fn hole_name(lits: &[&Literal]) -> String {
    let mut z = String::from("z");
    let mut vars = Vec::new();
    for l in lits {
        l.collect_vars(&mut vars);
    }
    while vars.iter().any(|(v, _)| *v == z) {
        z.push('\'');
    }
    z
}

fn try_rewrite(cx: &StepCx<'_>, mode: Mode, rw: &Premise, tg: &Premise, c: &Rewrite) -> Result<Option<Expr>, String> {
    let Some(eq_lit) = rw.clause.literals.get(c.eq) else { return Ok(None) };
    let Some(target) = tg.clause.literals.get(c.target) else { return Ok(None) };
    let Some((l, r)) = sides(eq_lit, c.right_to_left) else { return Ok(None) };
    let Some(s) = target.subterm(&c.path) else { return Ok(None) };
    if s.is_var() {
        return Ok(None);
    }
    let sigma = match mode {
        Mode::Unify => unify(l, s).ok(),
        Mode::Match => match_term(l, s),
    };
    let Some(sigma) = sigma else { return Ok(None) };
    let err = |e: crate::fol::FolError| e.to_string();
    let (sl, sr) = (sigma.apply(l).map_err(err)?, sigma.apply(r).map_err(err)?);

    let all_lits: Vec<&Literal> = rw.clause.literals.iter().chain(&tg.clause.literals).collect();
    let z = Term::var(hole_name(&all_lits), sl.sort().clone());
    // Contexts of the rewritten literals, with `z` at the rewritten positions.
    let mut contexts: Vec<Option<Literal>> = Vec::new();
    for (k, t) in tg.clause.literals.iter().enumerate() {
        let st = sigma.apply_literal(t).map_err(err)?;
        let ctx = if c.simultaneous {
            st.contains(&sl).then(|| st.replace_all(&sl, &z))
        } else if k == c.target {
            st.replace_at(&c.path, &z)
        } else {
            None
        };
        contexts.push(ctx);
    }
    let mut recomputed = apply_all(&sigma, &rw.clause.literals, Some(c.eq))?;
    for (k, t) in tg.clause.literals.iter().enumerate() {
        match &contexts[k] {
            Some(ctx) => recomputed.push(ctx.replace_all(&z, &sr)),
            None => recomputed.push(sigma.apply_literal(t).map_err(err)?),
        }
    }
    let Some(rho) = cx.fit(&recomputed) else { return Ok(None) };
    let inst = Inst::new(sigma, rho);
    let goal = cx.goal();

    let z_name = match &z {
        Term::Var { name, .. } => name.clone(),
        Term::App { .. } => unreachable!(),
    };
    let z_sort = inst.sort(z.sort());
    let mut hole = Inst::new(inst.sigma.clone(), inst.rho.clone());
    hole.rho.terms.insert(z_name.clone(), Term::var(z_name.clone(), z_sort.clone()));
    let theta_eq = inst.literal(eq_lit)?;
    let theta_r = inst.term(r)?;

    let mut conts = Vec::new();
    for (k, t) in tg.clause.literals.iter().enumerate() {
        let Some(ctx) = &contexts[k] else {
            conts.push(goal.lit(&inst.literal(t)?)?);
            continue;
        };
        let ctx = hole.close_literal(ctx);
        let rewritten = ctx.replace_all(&Term::var(z_name.clone(), z_sort.clone()), &theta_r);
        let hyp = goal.lit(&rewritten)?;
        let r_proof = if c.right_to_left { sym(&theta_eq, Expr::ident("r")) } else { Expr::ident("r") };
        let step = Expr::app(r_proof, [context(&z_name, &z_sort, &ctx), Expr::ident("q")]);
        let mut eq_cont = Some(Expr::lam("r", prf(deep_literal(&theta_eq)), Expr::app(hyp, [step])));
        let rw_conts = rw.conts(&goal, &inst, &mut |k2, _| Ok(if k2 == c.eq { eq_cont.take() } else { None }))?;
        let inner = rw.apply(&inst, rw_conts)?;
        conts.push(Expr::lam("q", prf(deep_literal(&inst.literal(t)?)), inner));
    }
    Ok(Some(goal.close(tg.apply(&inst, conts)?)))
}

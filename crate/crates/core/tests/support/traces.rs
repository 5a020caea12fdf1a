//! Trace generators and an end-to-end driver shared by the integration
//! tests.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use lampi::drv::{parse_trace, Trace};
use lampi::kernel::{CheckOptions, CheckReport, Signature};
use lampi::translate::{translate, TranslateOptions, Translation};
use rand::rngs::StdRng;
use rand::Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Names of the golden traces, sorted.
pub fn golden_traces() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "drv").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}

pub fn read_golden(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(format!("{name}.drv"))).unwrap()
}

pub struct Run {
    pub translation: Translation,
    pub signature: Signature,
    pub check: CheckReport,
}

impl Run {
    /// `Ok` iff the script checks, otherwise the first failing entry.
    pub fn verdict(&self) -> Result<(), String> {
        match self.check.first_error() {
            None => Ok(()),
            Some((label, e)) => Err(format!("{label}: {e}")),
        }
    }
}

pub fn run_trace(trace: &Trace) -> Result<Run, String> {
    let translation = translate(trace, TranslateOptions::default()).map_err(|e| e.to_string())?;
    let (signature, check) = lampi::check_document(&translation.document, CheckOptions::default());
    Ok(Run { translation, signature, check })
}

/// Parses, translates and checks.
pub fn run(src: &str) -> Result<Run, String> {
    run_trace(&parse_trace(src).map_err(|e| e.to_string())?)
}

/// Propositional clause over atoms `a0`…: bit `i` of `pos`/`neg` holds
/// when `ai` occurs positively/negatively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PClause {
    pub pos: u8,
    pub neg: u8,
}

impl PClause {
    fn satisfied(self, v: u8) -> bool {
        self.pos & v != 0 || self.neg & !v != 0
    }

    /// Literals in trace order: atoms ascending, positive before negative.
    pub fn literals(self, atoms: usize) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        for a in 0..atoms {
            if self.pos >> a & 1 == 1 {
                out.push((a, true));
            }
            if self.neg >> a & 1 == 1 {
                out.push((a, false));
            }
        }
        out
    }

    fn index(self, atoms: usize, lit: (usize, bool)) -> usize {
        self.literals(atoms).iter().position(|&l| l == lit).unwrap()
    }

    fn render(self, atoms: usize) -> String {
        let lits = self.literals(atoms);
        if lits.is_empty() {
            return "$false".into();
        }
        let lits: Vec<String> = lits.iter().map(|&(a, p)| format!("{}a{a}", if p { "" } else { "~" })).collect();
        lits.join(" ; ")
    }
}

/// Brute-force satisfiability over every assignment.
pub fn satisfiable(clauses: &[PClause], atoms: usize) -> bool {
    (0..1u16 << atoms).any(|v| clauses.iter().all(|c| c.satisfied(v as u8)))
}

/// Random unsatisfiable clause set over `atoms` atoms, minimal with respect
/// to clause removal.
pub fn unsat_set(rng: &mut StdRng, atoms: usize) -> Vec<PClause> {
    let mut cs: Vec<PClause> = Vec::new();
    while satisfiable(&cs, atoms) {
        let width = rng.gen_range(1..=3.min(atoms));
        let mut c = PClause { pos: 0, neg: 0 };
        for _ in 0..width {
            let a = rng.gen_range(0..atoms);
            if (c.pos | c.neg) >> a & 1 == 0 {
                if rng.gen_bool(0.5) {
                    c.pos |= 1 << a;
                } else {
                    c.neg |= 1 << a;
                }
            }
        }
        if !cs.contains(&c) {
            cs.push(c);
        }
    }
    let mut i = 0;
    while i < cs.len() {
        let mut rest = cs.clone();
        rest.remove(i);
        if satisfiable(&rest, atoms) {
            i += 1;
        } else {
            cs = rest;
        }
    }
    cs
}

type Parents = (usize, usize, usize);

/// Resolution refutation of an unsatisfiable set by saturation, pruned to
/// the steps the empty clause depends on. Returns the trace text and the
/// number of resolution steps.
pub fn ground_refutation(rng: &mut StdRng, max_atoms: usize) -> (String, usize) {
    let atoms = rng.gen_range(1..=max_atoms);
    let inputs = unsat_set(rng, atoms);
    // Clauses with their parents as (main, side, atom).
    let mut all: Vec<(PClause, Option<Parents>)> = inputs.iter().map(|&c| (c, None)).collect();
    let mut seen: HashMap<PClause, usize> = inputs.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut done = 0;
    let empty = 'saturate: loop {
        let n = all.len();
        assert!(done < n, "saturation stalled on an unsatisfiable set");
        for j in done..n {
            for i in 0..=j {
                for (x, y) in [(i, j), (j, i)] {
                    let (a, b) = (all[x].0, all[y].0);
                    for atom in 0..atoms {
                        if a.pos >> atom & 1 == 0 || b.neg >> atom & 1 == 0 {
                            continue;
                        }
                        let bit = !(1u8 << atom);
                        let r = PClause { pos: (a.pos | b.pos) & bit, neg: (a.neg | b.neg) & bit };
                        if r.pos & r.neg != 0 || seen.contains_key(&r) {
                            continue;
                        }
                        seen.insert(r, all.len());
                        all.push((r, Some((x, y, atom))));
                        if r.pos == 0 && r.neg == 0 {
                            break 'saturate all.len() - 1;
                        }
                    }
                }
            }
        }
        done = n;
    };
    let mut needed = vec![false; all.len()];
    let mut stack = vec![empty];
    while let Some(k) = stack.pop() {
        if std::mem::replace(&mut needed[k], true) {
            continue;
        }
        if let Some((x, y, _)) = all[k].1 {
            stack.extend([x, y]);
        }
    }
    let mut out = String::from("drv 1 cnf.\n");
    for a in 0..atoms {
        let _ = writeln!(out, "pred a{a} ().");
    }
    let mut ids = HashMap::new();
    let mut steps = 0;
    for (k, (c, parents)) in all.iter().enumerate().filter(|(k, _)| needed[*k]) {
        let id = ids.len() + 1;
        ids.insert(k, id);
        match parents {
            None => {
                let _ = writeln!(out, "step {id} input [] {{}} | {} | .", c.render(atoms));
            }
            Some((x, y, atom)) => {
                steps += 1;
                let i = all[*x].0.index(atoms, (*atom, true));
                let j = all[*y].0.index(atoms, (*atom, false));
                let _ = writeln!(
                    out,
                    "step {id} resolution [{}, {}] {{}} | {} | lits={i}:{j}.",
                    ids[x],
                    ids[y],
                    c.render(atoms)
                );
            }
        }
    }
    (out, steps)
}

/// A split of a clause with `k` components of `n` literals over `m`
/// variables each, followed by the component clauses. Literals of the
/// components are interleaved in the split clause.
pub fn appendix_trace(k: usize, n: usize, m: usize) -> String {
    let mut out = String::from("drv 1 cnf.\n");
    let sorts = vec!["iota"; m].join(", ");
    for g in 1..=k {
        for t in 1..=n {
            let _ = writeln!(out, "pred p{g}n{t} ({sorts}).");
        }
    }
    let lit = |g: usize, t: usize| {
        let sign = if t.is_multiple_of(2) { "~" } else { "" };
        if m == 0 {
            return format!("{sign}p{g}n{t}");
        }
        let args: Vec<String> = (0..m).map(|j| format!("Y{g}v{}", (j + t) % m + 1)).collect();
        format!("{sign}p{g}n{t}({})", args.join(", "))
    };
    let mut order = Vec::new();
    for t in 1..=n {
        for g in 1..=k {
            order.push((g, t));
        }
    }
    let clause: Vec<String> = order.iter().map(|&(g, t)| lit(g, t)).collect();
    let _ = writeln!(out, "step 1 input [] {{}} | {} | .", clause.join(" ; "));
    let groups: Vec<String> = (1..=k)
        .map(|g| {
            let idx: Vec<String> =
                order.iter().enumerate().filter(|(_, (h, _))| *h == g).map(|(i, _)| i.to_string()).collect();
            format!("{g}:{}", idx.join(","))
        })
        .collect();
    let _ = writeln!(out, "step 2 avatar_split [1] {{}} | $false | split={}.", groups.join(";"));
    for g in 1..=k {
        let lits: Vec<String> = (1..=n).map(|t| lit(g, t)).collect();
        let _ = writeln!(out, "step {} avatar_component [] {{{g}}} | {} | sp={g}.", g + 2, lits.join(" ; "));
    }
    out
}

/// A linear chain `a0`, `~a0 | a1`, …, `~a(n-1) | an`, `~an` refuted by
/// `n + 1` resolutions.
pub fn resolution_chain(n: usize) -> String {
    let mut out = String::from("drv 1 cnf.\n");
    for a in 0..=n {
        let _ = writeln!(out, "pred a{a} ().");
    }
    let _ = writeln!(out, "step 1 input [] {{}} | a0 | .");
    let mut id = 1;
    let mut last = 1;
    for a in 0..n {
        let _ = writeln!(out, "step {} input [] {{}} | ~a{a} ; a{} | .", id + 1, a + 1);
        let _ = writeln!(out, "step {} resolution [{last}, {}] {{}} | a{} | lits=0:0.", id + 2, id + 1, a + 1);
        last = id + 2;
        id += 2;
    }
    let _ = writeln!(out, "step {} input [] {{}} | ~a{n} | .", id + 1);
    let _ = writeln!(out, "step {} resolution [{last}, {}] {{}} | $false | lits=0:0.", id + 2, id + 1);
    out
}

/// Copies of `trace` with exactly one equation literal of one step
/// flipped, labelled `step N literal I`.
pub fn flip_variants(trace: &Trace) -> Vec<(String, Trace)> {
    let mut out = Vec::new();
    for (si, step) in trace.steps.iter().enumerate() {
        for (li, l) in step.clause.literals.iter().enumerate() {
            if l.is_equation() {
                let mut t = trace.clone();
                t.steps[si].clause.literals[li] = l.flipped();
                out.push((format!("step {} literal {li}", step.id), t));
            }
        }
    }
    out
}

/// Translates and checks `appendix_trace(k, n, m)`, then compares the types
/// of the split and component entries with the general schema:
/// `‖sp1‖ -> … -> ‖spk‖ -> prf bot` and
/// `‖¬spg‖ -> Π y. ‖Lg1‖ -> … -> ‖Lgn‖ -> prf bot`.
pub fn appendix_conformance(k: usize, n: usize, m: usize) -> Result<(), String> {
    use lampi::dk::{resolve_expr, Expr};
    use lampi::embedding::{mangle, split_name, var_name};
    use lampi::kernel::{Reducer, DEFAULT_BUDGET};

    let run = run(&appendix_trace(k, n, m))?;
    run.verdict()?;
    let id = |x: &str| Expr::ident(x);
    let prf = |p: Expr| Expr::app(id("prf"), [p]);
    let bot = || prf(id("bot"));
    let not = |p: Expr| Expr::app(id("not"), [p]);
    let shallow = |p: Expr| Expr::arrow(prf(p), bot());
    let red = Reducer::new(&run.signature, DEFAULT_BUDGET);
    let conforms = |entry: &str, schema: Expr| -> Result<(), String> {
        let actual = &run.signature.get(entry).ok_or(format!("{entry} missing"))?.ty;
        let schema = resolve_expr(&schema, &mut Vec::new());
        match red.conv(actual, &schema) {
            Ok(true) => Ok(()),
            _ => Err(format!("{entry} does not have the schema type")),
        }
    };
    let split = Expr::arrows((1..=k).map(|g| shallow(id(&split_name(g as u64)))), bot());
    conforms("step_2", split)?;
    for g in 1..=k {
        // Variables are bound in order of first occurrence, that is, as in the
        // first literal.
        let vars: Vec<(String, Expr)> = (0..m)
            .map(|j| (var_name(&format!("Y{g}v{}", (j + 1) % m + 1)), Expr::app(id("El"), [id("iota")])))
            .collect();
        let lits = (1..=n).map(|t| {
            let args = (0..m).map(|j| id(&var_name(&format!("Y{g}v{}", (j + t) % m + 1))));
            let atom = Expr::app(id(&mangle(&format!("p{g}n{t}"))), args);
            shallow(if t.is_multiple_of(2) { not(atom) } else { atom })
        });
        let body = Expr::pis(vars, Expr::arrows(lits, bot()));
        let component = Expr::arrow(shallow(not(id(&split_name(g as u64)))), body);
        conforms(&format!("step_{}", g + 2), component)?;
    }
    Ok(())
}

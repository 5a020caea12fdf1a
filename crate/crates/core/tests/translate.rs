mod support;

use lampi::dk::{print_expr, resolve_expr, Expr, Item};
use lampi::drv::{parse_trace, RuleName};
use lampi::embedding::{avatar_clause_type, repair_orientation, shallow_literal, step_name};
use lampi::fol::{Literal, Sort, Term};
use lampi::kernel::{check_entry, Entry, Reducer, DEFAULT_BUDGET};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use support::traces::{
    appendix_conformance, flip_variants, golden_traces, ground_refutation, read_golden, run, run_trace,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ground_resolutions_check(seed in any::<u64>()) {
        let (src, _) = ground_refutation(&mut StdRng::seed_from_u64(seed), 6);
        let r = run(&src).unwrap();
        prop_assert!(r.translation.report.sorries.is_empty());
        prop_assert!(r.verdict().is_ok(), "{:?}\n{src}", r.verdict());
    }
}

/// First-order term for the equality resolution generator.
#[derive(Clone, Debug)]
enum T {
    Var(String),
    C,
    G(Box<T>),
    F(Box<T>, Box<T>),
}

impl T {
    fn render(&self) -> String {
        match self {
            T::Var(x) => x.clone(),
            T::C => "c".into(),
            T::G(a) => format!("g({})", a.render()),
            T::F(a, b) => format!("f({}, {})", a.render(), b.render()),
        }
    }

    fn random(rng: &mut StdRng, depth: u32) -> T {
        match rng.gen_range(0..if depth == 0 { 2 } else { 4 }) {
            0 => T::C,
            1 => T::Var(["X", "Y"][rng.gen_range(0..2)].into()),
            2 => T::G(Box::new(T::random(rng, depth - 1))),
            _ => T::F(Box::new(T::random(rng, depth - 1)), Box::new(T::random(rng, depth - 1))),
        }
    }

    /// Replaces random subterms by fresh variables `Z0`, `Z1`, …, recording
    /// what each one stands for.
    fn generalize(&self, rng: &mut StdRng, out: &mut Vec<T>) -> T {
        if rng.gen_bool(0.3) {
            out.push(self.clone());
            return T::Var(format!("Z{}", out.len() - 1));
        }
        match self {
            T::G(a) => T::G(Box::new(a.generalize(rng, out))),
            T::F(a, b) => {
                let a = a.generalize(rng, out);
                T::F(Box::new(a), Box::new(b.generalize(rng, out)))
            }
            t => t.clone(),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// `p(Z0) ; … ; s != t` where `s` generalizes `t`: the unifier sends
    /// each `Zi` to the subterm it replaced.
    #[test]
    fn equality_resolutions_check(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let t = T::random(&mut rng, 3);
        let mut holes = Vec::new();
        let s = t.generalize(&mut rng, &mut holes);
        let mut rest: Vec<(String, String)> = holes
            .iter()
            .enumerate()
            .map(|(i, h)| (format!("p(Z{i})"), format!("p({})", h.render())))
            .collect();
        rest.push(("q(X, Y)".into(), "q(X, Y)".into()));
        let at = rng.gen_range(0..=rest.len());
        let eq = if rng.gen_bool(0.5) {
            format!("!= {} {}", s.render(), t.render())
        } else {
            format!("!= {} {}", t.render(), s.render())
        };
        let mut premise: Vec<String> = rest.iter().map(|(p, _)| p.clone()).collect();
        premise.insert(at, eq);
        let conclusion: Vec<String> = rest.iter().map(|(_, c)| c.clone()).collect();
        let src = format!(
            "drv 1 cnf.\nfun c () iota.\nfun g (iota) iota.\nfun f (iota, iota) iota.\npred p (iota).\npred q (iota, iota).\n\
             step 1 input [] {{}} | {} | .\nstep 2 equality_resolution [1] {{}} | {} | lits={at}.\n",
            premise.join(" ; "),
            conclusion.join(" ; ")
        );
        let r = run(&src).unwrap();
        prop_assert!(r.translation.report.sorries.is_empty());
        prop_assert!(r.verdict().is_ok(), "{:?}\n{src}", r.verdict());
    }
}

#[test]
fn ground_disequation_is_discharged_by_reflexivity() {
    let src = "drv 1 cnf.\nfun c () iota.\npred p (iota).\n\
               step 1 input [] {} | p(c) ; != c c | .\nstep 2 equality_resolution [1] {} | p(c) | lits=1.\n";
    let r = run(src).unwrap();
    r.verdict().unwrap();
    let body = r.translation.document.items().find_map(|i| match i {
        Item::Def { name, body, .. } if name == "step_2" => Some(print_expr(body)),
        _ => None,
    });
    assert!(body.unwrap().contains("refl iota u_c"));
}

#[test]
fn appendix_schema_at_small_sizes() {
    for (k, n, m) in [(1, 1, 0), (2, 2, 1), (3, 1, 2), (1, 3, 2)] {
        appendix_conformance(k, n, m).unwrap_or_else(|e| panic!("({k}, {n}, {m}): {e}"));
    }
}

#[test]
fn every_golden_equation_can_be_flipped() {
    for name in golden_traces() {
        let trace = parse_trace(&read_golden(&name)).unwrap();
        for (label, t) in flip_variants(&trace) {
            let r = run_trace(&t).unwrap_or_else(|e| panic!("{name}, {label}: {e}"));
            r.verdict().unwrap_or_else(|e| panic!("{name}, {label}: {e}"));
        }
    }
}

/// The type of every step entry is the clause type recomputed from the
/// trace line.
#[test]
fn conclusions_are_the_stated_clauses() {
    for name in golden_traces() {
        let trace = parse_trace(&read_golden(&name)).unwrap();
        let r = run_trace(&trace).unwrap();
        r.verdict().unwrap();
        let red = Reducer::new(&r.signature, DEFAULT_BUDGET);
        for step in &trace.steps {
            if matches!(step.rule, RuleName::AvatarSplit | RuleName::AvatarDefinition) {
                continue;
            }
            let stated = resolve_expr(&avatar_clause_type(&step.clause, &step.conditions), &mut Vec::new());
            let actual = &r.signature.get(&step_name(step.id)).unwrap().ty;
            assert!(red.conv(actual, &stated).unwrap(), "{name}: step {}", step.id);
        }
    }
}

#[test]
fn double_repair_keeps_the_type() {
    let r = run(&read_golden("orientation")).unwrap();
    let mut sig = r.signature.clone();
    let iota = Sort::iota();
    let c = Term::app("c", vec![], vec![], iota.clone());
    let d = Term::app("d", vec![], vec![], iota);
    for l in [Literal::eq(true, c.clone(), d.clone()), Literal::eq(false, c, d)] {
        let twice = repair_orientation(&l.flipped(), repair_orientation(&l, Expr::ident("h")));
        let ty = Expr::arrow(shallow_literal(&l), shallow_literal(&l));
        let name = format!("twice_{}", l.positive);
        let def = Item::Def { name, ty, body: Expr::lam("h", shallow_literal(&l), twice) };
        let entry: Entry = lampi::dk::resolve_item(&def).unwrap();
        check_entry(&mut sig, &entry, DEFAULT_BUDGET).0.unwrap();
    }
}

#[test]
fn contradiction_is_the_premise() {
    let r = run(&read_golden("avatar")).unwrap();
    r.verdict().unwrap();
    let red = Reducer::new(&r.signature, DEFAULT_BUDGET);
    let (premise, contradiction) = (r.signature.get("step_10").unwrap(), r.signature.get("step_11").unwrap());
    assert!(red.conv(&premise.ty, &contradiction.ty).unwrap());
    assert_eq!(contradiction.body.as_deref().map(|b| format!("{b:?}")), Some("Const(\"step_10\")".into()));
}

const THREADING: &str = "drv 1 cnf.
fun c () iota.
pred p (iota).
pred q (iota).
pred r (iota).
step 1 input [] {} | p(X) ; q(Y) ; r(Z) | .
step 2 avatar_split [1] {} | $false | split=1:0;2:1;3:2.
step 3 avatar_component [] {1} | p(X) | sp=1.
step 4 avatar_component [] {2} | q(Y) | sp=2.
step 5 input [] {} | ~p(X) ; ~q(Y) | .
step 6 resolution [3, 5] {1} | ~q(Y) | lits=0:0.
step 7 input [] {} | ~p(c) ; q(c) | .
step 8 resolution [3, 7] {1} | q(c) | lits=0:0.
step 9 resolution [8, 6] {1} | $false | lits=0:0.
step 10 resolution [4, 6] CONDS | $false | lits=0:0.
";

#[test]
fn conditions_are_threaded_through_unions() {
    let r = run(&THREADING.replace("CONDS", "{1,2}")).unwrap();
    r.verdict().unwrap();
    assert!(r.translation.report.notes.is_empty(), "{:?}", r.translation.report.notes);
    // A strictly larger condition set is accepted and reported.
    let r = run(&THREADING.replace("CONDS", "{1,2,3}")).unwrap();
    r.verdict().unwrap();
    assert_eq!(r.translation.report.notes.len(), 1, "{:?}", r.translation.report.notes);
    // Dropping a premise condition is a corrupted trace.
    assert!(run(&THREADING.replace("CONDS", "{2}")).is_err());
}

#[test]
fn zero_premise_unsupported_step_is_a_bare_axiom() {
    let src = "drv 1 cnf.\npred p ().\nstep 1 clausify [] {} | p | .\nstep 2 input [] {} | ~p | .\n\
               step 3 resolution [1, 2] {} | $false | lits=0:0.\n";
    let r = run(src).unwrap();
    r.verdict().unwrap();
    assert_eq!(r.translation.report.sorries.len(), 1);
    let sorry = r.translation.document.items().find_map(|i| match i {
        Item::Decl { name, ty, .. } if name.starts_with("sorry_") => Some(print_expr(ty)),
        _ => None,
    });
    assert_eq!(sorry.unwrap(), "(prf u_p -> prf bot) -> prf bot");
}

#[test]
fn misleading_hints_are_recovered_but_wrong_conclusions_are_not() {
    let src = read_golden("factoring").replace("lits=1:0.\nstep 5", "lits=0:0.\nstep 5");
    run(&src).unwrap().verdict().unwrap();
    let src = read_golden("factoring").replace("| p(g(c)) | lits=1:0.", "| p(g(g(c))) | lits=1:0.");
    let e = run(&src).err().expect("an underivable conclusion must be rejected");
    assert!(e.contains("step 4"), "{e}");
}

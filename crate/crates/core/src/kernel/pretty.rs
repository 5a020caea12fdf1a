use std::collections::HashSet;

use super::term::{constants, occurs, unapply, Name, Term, Tm};

/// Renders a kernel term in concrete syntax, naming bound variables after
/// their hints. `names` lists the enclosing context, outermost first.
pub fn show(t: &Tm, names: &[Name]) -> String {
    let mut consts = HashSet::new();
    constants(t, &mut consts);
    let mut scope: Vec<String> = names.iter().map(|n| n.to_string()).collect();
    let mut out = String::new();
    go(t, &mut scope, &consts, &mut out, 0);
    out
}

fn fresh(hint: &str, scope: &[String], consts: &HashSet<Name>) -> String {
    let base = if hint.is_empty() || hint == "_" { "x" } else { hint };
    let taken = |n: &str| scope.iter().any(|s| s == n) || consts.contains(n);
    if !taken(base) {
        return base.to_string();
    }
    (1..).map(|i| format!("{base}_{i}")).find(|n| !taken(n)).unwrap()
}

// prec: 0 = top, 1 = domain of an arrow, 2 = argument position
fn go(t: &Tm, scope: &mut Vec<String>, consts: &HashSet<Name>, out: &mut String, prec: u8) {
    match &**t {
        Term::Kind => out.push_str("Kind"),
        Term::Type => out.push_str("Type"),
        Term::Const(c) => out.push_str(c),
        Term::Var(i) => match scope.len().checked_sub(i + 1) {
            Some(k) => out.push_str(&scope[k]),
            None => out.push_str(&format!("#{i}")),
        },
        Term::App(..) => {
            let (h, args) = unapply(t);
            if prec >= 2 {
                out.push('(');
            }
            go(&h, scope, consts, out, 2);
            for a in &args {
                out.push(' ');
                go(a, scope, consts, out, 2);
            }
            if prec >= 2 {
                out.push(')');
            }
        }
        Term::Lam(x, a, b) | Term::Pi(x, a, b) => {
            let is_lam = matches!(&**t, Term::Lam(..));
            if prec >= 1 {
                out.push('(');
            }
            if !is_lam && !occurs(b, 0) {
                go(a, scope, consts, out, 1);
                out.push_str(" -> ");
                scope.push("_".into());
                go(b, scope, consts, out, 0);
                scope.pop();
            } else {
                let n = fresh(x, scope, consts);
                out.push_str(&n);
                out.push_str(" : ");
                go(a, scope, consts, out, 1);
                out.push_str(if is_lam { " => " } else { " -> " });
                scope.push(n);
                go(b, scope, consts, out, 0);
                scope.pop();
            }
            if prec >= 1 {
                out.push(')');
            }
        }
    }
}

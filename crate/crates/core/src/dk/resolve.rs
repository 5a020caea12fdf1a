use std::sync::Arc;

use super::{Document, Expr, Item};
use crate::kernel::term::{self, Name, Tm};
use crate::kernel::Entry;

/// Translates a named term into a kernel term. `scope` lists the enclosing
/// binders, outermost first; any other identifier becomes a constant.
pub fn resolve_expr(e: &Expr, scope: &mut Vec<String>) -> Tm {
    match e {
        Expr::Type => term::ty(),
        Expr::Ident(x) => match scope.iter().rposition(|s| s == x) {
            Some(k) => term::var(scope.len() - 1 - k),
            None => term::cst(x),
        },
        Expr::App(f, args) => {
            let f = resolve_expr(f, scope);
            args.iter().fold(f, |acc, a| term::app(acc, resolve_expr(a, scope)))
        }
        Expr::Lam(x, t, b) => {
            let t = resolve_expr(t, scope);
            scope.push(x.clone());
            let b = resolve_expr(b, scope);
            scope.pop();
            Arc::new(term::Term::Lam(Name::from(x.as_str()), t, b))
        }
        Expr::Pi(x, t, b) => {
            let t = resolve_expr(t, scope);
            let name = x.clone().unwrap_or_else(|| "_".to_string());
            // An anonymous binder must not capture: use a name no identifier can spell.
            scope.push(if x.is_some() { name.clone() } else { " ".to_string() });
            let b = resolve_expr(b, scope);
            scope.pop();
            Arc::new(term::Term::Pi(Name::from(name.as_str()), t, b))
        }
    }
}

/// Kernel entry of an item; notes have none.
pub fn resolve_item(item: &Item) -> Option<Entry> {
    let mut scope = Vec::new();
    match item {
        Item::Decl { name, ty, definable } => Some(Entry::Decl {
            name: Name::from(name.as_str()),
            ty: resolve_expr(ty, &mut scope),
            definable: *definable,
        }),
        Item::Def { name, ty, body } => Some(Entry::Def {
            name: Name::from(name.as_str()),
            ty: resolve_expr(ty, &mut scope),
            body: resolve_expr(body, &mut scope),
        }),
        Item::Rule { ctx, lhs, rhs } => {
            let mut scope = ctx.clone();
            Some(Entry::Rule {
                ctx: ctx.iter().map(|x| Name::from(x.as_str())).collect(),
                lhs: resolve_expr(lhs, &mut scope),
                rhs: resolve_expr(rhs, &mut scope),
            })
        }
        Item::Note(_) => None,
    }
}

pub fn resolve_document(doc: &Document) -> Vec<Entry> {
    doc.items().filter_map(resolve_item).collect()
}

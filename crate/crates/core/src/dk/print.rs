use super::{Document, Expr, Item, HEADER_BANNER};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Top,
    Domain,
    Arg,
}

fn write_expr(e: &Expr, prec: Prec, out: &mut String) {
    match e {
        Expr::Type => out.push_str("Type"),
        Expr::Ident(x) => out.push_str(x),
        Expr::App(f, args) => {
            if prec >= Prec::Arg {
                out.push('(');
            }
            write_expr(f, Prec::Arg, out);
            for a in args {
                out.push(' ');
                write_expr(a, Prec::Arg, out);
            }
            if prec >= Prec::Arg {
                out.push(')');
            }
        }
        Expr::Lam(x, t, b) | Expr::Pi(Some(x), t, b) => {
            if prec >= Prec::Domain {
                out.push('(');
            }
            out.push_str(x);
            out.push_str(" : ");
            write_expr(t, Prec::Domain, out);
            out.push_str(if matches!(e, Expr::Lam(..)) { " => " } else { " -> " });
            write_expr(b, Prec::Top, out);
            if prec >= Prec::Domain {
                out.push(')');
            }
        }
        Expr::Pi(None, t, b) => {
            if prec >= Prec::Domain {
                out.push('(');
            }
            write_expr(t, Prec::Domain, out);
            out.push_str(" -> ");
            write_expr(b, Prec::Top, out);
            if prec >= Prec::Domain {
                out.push(')');
            }
        }
    }
}

pub fn print_expr(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(e, Prec::Top, &mut s);
    s
}

fn write_item(item: &Item, out: &mut String) {
    match item {
        Item::Decl { name, ty, definable } => {
            if *definable {
                out.push_str("def ");
            }
            out.push_str(name);
            out.push_str(" : ");
            write_expr(ty, Prec::Top, out);
            out.push_str(".\n");
        }
        Item::Def { name, ty, body } => {
            out.push_str("def ");
            out.push_str(name);
            out.push_str(" : ");
            write_expr(ty, Prec::Top, out);
            out.push_str(" :=\n  ");
            write_expr(body, Prec::Top, out);
            out.push_str(".\n");
        }
        Item::Rule { ctx, lhs, rhs } => {
            out.push('[');
            out.push_str(&ctx.join(", "));
            out.push_str("] ");
            write_expr(lhs, Prec::Top, out);
            out.push_str("\n  --> ");
            write_expr(rhs, Prec::Top, out);
            out.push_str(".\n");
        }
        Item::Note(text) => {
            out.push_str("(; ");
            out.push_str(text);
            out.push_str(" ;)\n");
        }
    }
}

/// Renders a document in Dedukti concrete syntax. Sections are separated
/// by blank lines and introduced by their banner.
pub fn print_document(doc: &Document) -> String {
    let mut out = String::new();
    if doc.header {
        out.push_str(HEADER_BANNER);
        out.push('\n');
    }
    for s in &doc.sections {
        if !out.is_empty() {
            out.push('\n');
        }
        if let Some(k) = s.kind {
            out.push_str(k.banner());
            out.push('\n');
        }
        for item in &s.items {
            write_item(item, &mut out);
        }
    }
    out
}

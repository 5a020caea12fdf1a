//! Named surface syntax of Dedukti scripts: documents, printing, parsing
//! and resolution into kernel entries.

mod parse;
mod print;
mod resolve;

pub use parse::{parse_document, parse_expr, ParseError};
pub use print::{print_document, print_expr};
pub use resolve::{resolve_document, resolve_expr, resolve_item};

/// A term with named variables. Identifiers not bound by an enclosing
/// binder refer to constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Type,
    Ident(String),
    /// Head applied to a non-empty argument list; the head is never itself
    /// an application.
    App(Box<Expr>, Vec<Expr>),
    Lam(String, Box<Expr>, Box<Expr>),
    /// Dependent product; `None` prints as a plain arrow.
    Pi(Option<String>, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn ident(name: impl Into<String>) -> Expr {
        Expr::Ident(name.into())
    }

    /// Application that keeps spines flat.
    pub fn app(f: Expr, args: impl IntoIterator<Item = Expr>) -> Expr {
        let mut args: Vec<Expr> = args.into_iter().collect();
        if args.is_empty() {
            return f;
        }
        match f {
            Expr::App(h, mut prev) => {
                prev.append(&mut args);
                Expr::App(h, prev)
            }
            f => Expr::App(Box::new(f), args),
        }
    }

    pub fn lam(x: impl Into<String>, ty: Expr, body: Expr) -> Expr {
        Expr::Lam(x.into(), Box::new(ty), Box::new(body))
    }

    pub fn pi(x: impl Into<String>, ty: Expr, body: Expr) -> Expr {
        Expr::Pi(Some(x.into()), Box::new(ty), Box::new(body))
    }

    pub fn arrow(a: Expr, b: Expr) -> Expr {
        Expr::Pi(None, Box::new(a), Box::new(b))
    }

    /// `a1 -> … -> an -> b`.
    pub fn arrows(args: impl IntoIterator<Item = Expr>, b: Expr) -> Expr {
        let args: Vec<Expr> = args.into_iter().collect();
        args.into_iter().rev().fold(b, |acc, a| Expr::arrow(a, acc))
    }

    /// Nested lambdas over `binders`, outermost first.
    pub fn lams(binders: impl IntoIterator<Item = (String, Expr)>, body: Expr) -> Expr {
        let bs: Vec<(String, Expr)> = binders.into_iter().collect();
        bs.into_iter().rev().fold(body, |acc, (x, t)| Expr::lam(x, t, acc))
    }

    /// Nested products over `binders`, outermost first.
    pub fn pis(binders: impl IntoIterator<Item = (String, Expr)>, body: Expr) -> Expr {
        let bs: Vec<(String, Expr)> = binders.into_iter().collect();
        bs.into_iter().rev().fold(body, |acc, (x, t)| Expr::pi(x, t, acc))
    }

    /// True iff `name` occurs free.
    pub fn mentions(&self, name: &str) -> bool {
        match self {
            Expr::Type => false,
            Expr::Ident(x) => x == name,
            Expr::App(f, args) => f.mentions(name) || args.iter().any(|a| a.mentions(name)),
            Expr::Lam(x, t, b) => t.mentions(name) || (x != name && b.mentions(name)),
            Expr::Pi(x, t, b) => t.mentions(name) || (x.as_deref() != Some(name) && b.mentions(name)),
        }
    }
}

/// The five parts of an emitted script, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionKind {
    Encoding,
    Shorthands,
    Signature,
    Inputs,
    Derivation,
}

impl SectionKind {
    pub const ALL: [SectionKind; 5] = [
        SectionKind::Encoding,
        SectionKind::Shorthands,
        SectionKind::Signature,
        SectionKind::Inputs,
        SectionKind::Derivation,
    ];

    pub fn banner(self) -> &'static str {
        match self {
            SectionKind::Encoding => "(; ===== Encoding of first-order logic ===== ;)",
            SectionKind::Shorthands => "(; ===== Shorthands ===== ;)",
            SectionKind::Signature => "(; ===== Signature ===== ;)",
            SectionKind::Inputs => "(; ===== Input clauses ===== ;)",
            SectionKind::Derivation => "(; ===== Derivation ===== ;)",
        }
    }
}

pub const HEADER_BANNER: &str = "(; Proof script generated by lampi. ;)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    /// `name : ty.` or `def name : ty.`
    Decl {
        name: String,
        ty: Expr,
        definable: bool,
    },
    Def {
        name: String,
        ty: Expr,
        body: Expr,
    },
    Rule {
        ctx: Vec<String>,
        lhs: Expr,
        rhs: Expr,
    },
    /// Standalone comment such as a sorry warning; the text excludes the
    /// comment delimiters.
    Note(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    /// `None` for entries that precede any section banner.
    pub kind: Option<SectionKind>,
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub header: bool,
    pub sections: Vec<Section>,
}

impl Document {
    /// A document with the five sections, all empty.
    pub fn skeleton(header: bool) -> Document {
        Document {
            header,
            sections: SectionKind::ALL.iter().map(|&k| Section { kind: Some(k), items: Vec::new() }).collect(),
        }
    }

    pub fn section_mut(&mut self, kind: SectionKind) -> &mut Vec<Item> {
        let i = self.sections.iter().position(|s| s.kind == Some(kind)).unwrap_or_else(|| {
            self.sections.push(Section { kind: Some(kind), items: Vec::new() });
            self.sections.len() - 1
        });
        &mut self.sections[i].items
    }

    pub fn items(&self) -> impl Iterator<Item = &Item> {
        self.sections.iter().flat_map(|s| s.items.iter())
    }
}

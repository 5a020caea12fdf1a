//! Shallow embedding of polymorphic first-order clauses into the
//! lambda-Pi calculus modulo.

mod prelude;

use std::collections::BTreeMap;

use crate::dk::{Expr, Item};
use crate::fol::{Atom, Clause, Literal, Sort, Term};

pub use prelude::{prelude_items, reserved_names, shorthand_items, PRELUDE, SHORTHANDS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbedError {
    #[error("symbol {0} declared twice")]
    Duplicate(String),
    #[error("unknown sort constructor {0}")]
    UnknownSort(String),
    #[error("sort constructor {name} expects {expected} arguments, got {found}")]
    SortArity { name: String, expected: usize, found: usize },
    #[error("sort variable {var} is not a parameter of {symbol}")]
    UnboundSortVar { var: String, symbol: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolKind {
    Function { result: Sort },
    Predicate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolDecl {
    pub name: String,
    pub sort_params: Vec<String>,
    pub args: Vec<Sort>,
    pub kind: SymbolKind,
}

/// Sort constructors and symbols of a problem, in declaration order.
#[derive(Debug, Clone, Default)]
pub struct SymbolTable {
    sorts: Vec<(String, usize)>,
    symbols: Vec<SymbolDecl>,
    index: BTreeMap<String, usize>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_sort(&mut self, name: &str, arity: usize) -> Result<(), EmbedError> {
        if name == "iota" || self.sort_arity(name).is_some() {
            return Err(EmbedError::Duplicate(name.to_string()));
        }
        self.sorts.push((name.to_string(), arity));
        Ok(())
    }

    pub fn sort_arity(&self, name: &str) -> Option<usize> {
        if name == "iota" {
            return Some(0);
        }
        self.sorts.iter().find(|(n, _)| n == name).map(|(_, a)| *a)
    }

    /// Checks that `s` only uses known constructors at the right arity and
    /// sort variables from `params`.
    pub fn check_sort(&self, s: &Sort, params: &[String], owner: &str) -> Result<(), EmbedError> {
        match s {
            Sort::Var(v) if params.contains(v) => Ok(()),
            Sort::Var(v) => Err(EmbedError::UnboundSortVar { var: v.clone(), symbol: owner.to_string() }),
            Sort::App(h, args) => {
                let expected = self.sort_arity(h).ok_or_else(|| EmbedError::UnknownSort(h.clone()))?;
                if expected != args.len() {
                    return Err(EmbedError::SortArity { name: h.clone(), expected, found: args.len() });
                }
                args.iter().try_for_each(|a| self.check_sort(a, params, owner))
            }
        }
    }

    pub fn add_symbol(&mut self, d: SymbolDecl) -> Result<(), EmbedError> {
        if self.index.contains_key(&d.name) {
            return Err(EmbedError::Duplicate(d.name));
        }
        for s in d.args.iter().chain(match &d.kind {
            SymbolKind::Function { result } => Some(result),
            SymbolKind::Predicate => None,
        }) {
            self.check_sort(s, &d.sort_params, &d.name)?;
        }
        self.index.insert(d.name.clone(), self.symbols.len());
        self.symbols.push(d);
        Ok(())
    }

    pub fn symbol(&self, name: &str) -> Option<&SymbolDecl> {
        self.index.get(name).map(|&i| &self.symbols[i])
    }

    pub fn sorts(&self) -> &[(String, usize)] {
        &self.sorts
    }

    pub fn symbols(&self) -> &[SymbolDecl] {
        &self.symbols
    }

    /// Declarations of all sort constructors and symbols.
    pub fn items(&self) -> Vec<Item> {
        let sorts = self.sorts.iter().map(|(n, a)| declare_sort(n, *a));
        sorts.chain(self.symbols.iter().map(declare_symbol)).collect()
    }
}

/// Namespaced identifier of a user symbol or sort constructor.
pub fn mangle(name: &str) -> String {
    let mut out = String::from("u_");
    for c in name.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c);
        } else {
            out.push_str(&format!("_{:x}_", c as u32));
        }
    }
    out
}

/// Identifier of a first-order or sort variable. Names that would clash
/// with an encoding constant get a trailing quote.
pub fn var_name(name: &str) -> String {
    if reserved_names().any(|r| r == name) {
        format!("{name}'")
    } else {
        name.to_string()
    }
}

pub fn step_name(id: u64) -> String {
    format!("step_{id}")
}

pub fn split_name(id: u64) -> String {
    format!("sp_{id}")
}

pub fn sorry_name(id: u64) -> String {
    format!("sorry_{id}")
}

fn id(x: &str) -> Expr {
    Expr::ident(x)
}

pub fn prf(p: Expr) -> Expr {
    Expr::app(id("prf"), [p])
}

pub fn prf_bot() -> Expr {
    prf(id("bot"))
}

pub fn el(s: Expr) -> Expr {
    Expr::app(id("El"), [s])
}

pub fn not(p: Expr) -> Expr {
    Expr::app(id("not"), [p])
}

pub fn declare_sort(name: &str, arity: usize) -> Item {
    Item::Decl {
        name: mangle(name),
        ty: Expr::arrows(std::iter::repeat_n(id("Set"), arity), id("Set")),
        definable: false,
    }
}

/// Type declaration of a function or predicate symbol; sort parameters are
/// bound first.
pub fn declare_symbol(d: &SymbolDecl) -> Item {
    let result = match &d.kind {
        SymbolKind::Function { result } => el(sort_expr(result)),
        SymbolKind::Predicate => id("Prop"),
    };
    let body = Expr::arrows(d.args.iter().map(|s| el(sort_expr(s))), result);
    let ty = Expr::pis(d.sort_params.iter().map(|p| (var_name(p), id("Set"))), body);
    Item::Decl { name: mangle(&d.name), ty, definable: false }
}

pub fn sort_expr(s: &Sort) -> Expr {
    match s {
        Sort::Var(v) => id(&var_name(v)),
        Sort::App(h, args) if h == "iota" && args.is_empty() => id("iota"),
        Sort::App(h, args) => Expr::app(id(&mangle(h)), args.iter().map(sort_expr)),
    }
}

/// `star S`, the witness that sort `S` is inhabited.
pub fn inhabit(s: &Sort) -> Expr {
    Expr::app(id("star"), [sort_expr(s)])
}

pub fn term_expr(t: &Term) -> Expr {
    match t {
        Term::Var { name, .. } => id(&var_name(name)),
        Term::App { sort_args, .. } if t.is_inhabitant() => inhabit(&sort_args[0]),
        Term::App { head, sort_args, args, .. } => {
            Expr::app(id(&mangle(head)), sort_args.iter().map(sort_expr).chain(args.iter().map(term_expr)))
        }
    }
}

pub fn deep_atom(a: &Atom) -> Expr {
    match a {
        Atom::Pred { head, sort_args, args } => {
            Expr::app(id(&mangle(head)), sort_args.iter().map(sort_expr).chain(args.iter().map(term_expr)))
        }
        Atom::Eq { lhs, rhs, sort } => Expr::app(id("eq"), [sort_expr(sort), term_expr(lhs), term_expr(rhs)]),
    }
}

/// `⌜L⌝ : Prop`.
pub fn deep_literal(l: &Literal) -> Expr {
    let a = deep_atom(&l.atom);
    if l.positive {
        a
    } else {
        not(a)
    }
}

/// `‖L‖ = prf ⌜L⌝ -> prf bot`.
pub fn shallow_literal(l: &Literal) -> Expr {
    Expr::arrow(prf(deep_literal(l)), prf_bot())
}

/// Binders of a clause: sort variables, then term variables.
pub fn clause_binders(c: &Clause) -> Vec<(String, Expr)> {
    let sorts = c.sort_vars.iter().map(|v| (var_name(v), id("Set")));
    let terms = c.term_vars.iter().map(|(v, s)| (var_name(v), el(sort_expr(s))));
    sorts.chain(terms).collect()
}

/// `Π sorts. Π vars. ‖L1‖ -> … -> ‖Ln‖ -> prf bot`.
pub fn clause_type(c: &Clause) -> Expr {
    let body = Expr::arrows(c.literals.iter().map(shallow_literal), prf_bot());
    Expr::pis(clause_binders(c), body)
}

/// A split label with its sign in an AVATAR condition set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Condition {
    pub split: u64,
    pub positive: bool,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.positive {
            write!(f, "{}", self.split)
        } else {
            write!(f, "-{}", self.split)
        }
    }
}

/// `‖¬sp‖` for a positive condition, `‖¬¬sp‖` for a negative one.
pub fn condition_type(c: &Condition) -> Expr {
    let sp = id(&split_name(c.split));
    let lit = if c.positive { not(sp) } else { not(not(sp)) };
    Expr::arrow(prf(lit), prf_bot())
}

pub fn avatar_clause_type(c: &Clause, conds: &[Condition]) -> Expr {
    Expr::arrows(conds.iter().map(condition_type), clause_type(c))
}

/// Proposition whose proofs are, up to rewriting, proofs of the clause:
/// `forallSet (A => … forall S (X => … imp (not ⌜L1⌝) (… bot)))`.
pub fn clause_prop(c: &Clause) -> Expr {
    let mut body = id("bot");
    for l in c.literals.iter().rev() {
        body = Expr::app(id("imp"), [not(deep_literal(l)), body]);
    }
    for (v, s) in c.term_vars.iter().rev() {
        let x = var_name(v);
        let s = sort_expr(s);
        body = Expr::app(id("forall"), [s.clone(), Expr::lam(x, el(s), body)]);
    }
    for v in c.sort_vars.iter().rev() {
        body = Expr::app(id("forallSet"), [Expr::lam(var_name(v), id("Set"), body)]);
    }
    body
}

/// `sp_i : Prop.` and the rule unfolding `prf sp_i` to the component.
pub fn split_definition(split: u64, component: &Clause) -> Vec<Item> {
    let name = split_name(split);
    vec![
        Item::Decl { name: name.clone(), ty: id("Prop"), definable: false },
        Item::Rule { ctx: Vec::new(), lhs: prf(id(&name)), rhs: prf(clause_prop(component)) },
    ]
}

/// Turns a proof `h : ‖S‖` of the stated literal into a proof of `‖M‖`,
/// where `M` is `S` with the equation sides swapped.
pub fn repair_orientation(stated: &Literal, h: Expr) -> Expr {
    match &stated.atom {
        Atom::Eq { lhs, rhs, sort } => {
            let lemma = if stated.positive { "comml" } else { "comml_not" };
            Expr::app(id(lemma), [sort_expr(sort), term_expr(lhs), term_expr(rhs), h])
        }
        Atom::Pred { .. } => h,
    }
}

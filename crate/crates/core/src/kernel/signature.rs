use std::collections::HashMap;

use super::term::{unapply, Name, Term, Tm};

/// Left-hand side argument pattern of a rewrite rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    /// Rule context variable, as a de Bruijn index into the rule context.
    Var(usize),
    /// Constant applied to argument patterns.
    Const(Name, Vec<Pattern>),
}

impl Pattern {
    /// Compiles a term into a pattern; `None` if it is not a first-order
    /// pattern over constants and rule variables below `arity`.
    pub fn from_term(t: &Tm, arity: usize) -> Option<Pattern> {
        let (head, args) = unapply(t);
        match &*head {
            Term::Var(i) if args.is_empty() && *i < arity => Some(Pattern::Var(*i)),
            Term::Const(c) => Some(Pattern::Const(
                c.clone(),
                args.iter().map(|a| Pattern::from_term(a, arity)).collect::<Option<_>>()?,
            )),
            _ => None,
        }
    }

    pub fn vars(&self, out: &mut Vec<usize>) {
        match self {
            Pattern::Var(i) => out.push(*i),
            Pattern::Const(_, args) => args.iter().for_each(|a| a.vars(out)),
        }
    }
}

/// A compiled rewrite rule `head p1 … pk --> rhs`.
#[derive(Debug, Clone)]
pub struct Rule {
    pub head: Name,
    /// Number of rule context variables.
    pub arity: usize,
    pub args: Vec<Pattern>,
    /// Right-hand side, with rule variables as the innermost indices.
    pub rhs: Tm,
}

#[derive(Debug, Clone)]
pub struct Constant {
    pub name: Name,
    pub ty: Tm,
    pub body: Option<Tm>,
    pub definable: bool,
}

/// Global environment: typed constants, definitions and rewrite rules.
#[derive(Debug, Default, Clone)]
pub struct Signature {
    constants: HashMap<Name, Constant>,
    rules: HashMap<Name, Vec<Rule>>,
    order: Vec<Name>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&Constant> {
        self.constants.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.constants.contains_key(name)
    }

    pub fn rules(&self, head: &str) -> &[Rule] {
        self.rules.get(head).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Constant names in declaration order.
    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.order.iter()
    }

    pub(crate) fn insert(&mut self, c: Constant) {
        self.order.push(c.name.clone());
        self.constants.insert(c.name.clone(), c);
    }

    pub(crate) fn add_rule(&mut self, r: Rule) {
        self.rules.entry(r.head.clone()).or_default().push(r);
    }
}

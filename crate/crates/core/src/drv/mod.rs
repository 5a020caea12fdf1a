//! The `.drv` derivation-trace format.
//!
//! A trace is line-oriented. Each statement sits on one line and ends with
//! a period; `%` starts a comment.
//!
//! ```text
//! drv 1 polymorphic.
//! sort list 1.
//! fun nil [A] () list(A).
//! pred p (iota).
//! step 1 input [] {} | p(X) ; = f(X) c | .
//! step 3 superposition [1, 2] {} | p(d) ; != g(d) e | lits=1:1 pos=0 orient=0.
//! ```
//!
//! Variables start with an upper-case letter and may carry a sort
//! annotation (`X:list(A)`); otherwise their sort is inferred from the
//! positions they occupy, defaulting to `iota`.

mod parse;

use std::fmt;

use crate::embedding::{Condition, SymbolDecl, SymbolKind, SymbolTable};
use crate::fol::{Clause, Literal, Term};

pub use parse::parse_trace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DrvError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("step {id}: {msg}")]
    Step { id: u64, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Logic {
    Cnf,
    ManySorted,
    Polymorphic,
}

impl Logic {
    pub fn as_str(self) -> &'static str {
        match self {
            Logic::Cnf => "cnf",
            Logic::ManySorted => "many-sorted",
            Logic::Polymorphic => "polymorphic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleName {
    Input,
    Resolution,
    SubsumptionResolution,
    Factoring,
    Superposition,
    SimultaneousSuperposition,
    Demodulation,
    EqualityResolution,
    AvatarDefinition,
    AvatarSplit,
    AvatarComponent,
    AvatarContradiction,
    Unsupported(String),
}

impl RuleName {
    pub fn parse(s: &str) -> RuleName {
        match s {
            "input" => RuleName::Input,
            "resolution" => RuleName::Resolution,
            "subsumption_resolution" => RuleName::SubsumptionResolution,
            "factoring" => RuleName::Factoring,
            "superposition" => RuleName::Superposition,
            "simultaneous_superposition" => RuleName::SimultaneousSuperposition,
            "demodulation" => RuleName::Demodulation,
            "equality_resolution" => RuleName::EqualityResolution,
            "avatar_definition" => RuleName::AvatarDefinition,
            "avatar_split" => RuleName::AvatarSplit,
            "avatar_component" => RuleName::AvatarComponent,
            "avatar_contradiction" => RuleName::AvatarContradiction,
            other => RuleName::Unsupported(other.to_string()),
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            RuleName::Input => "input",
            RuleName::Resolution => "resolution",
            RuleName::SubsumptionResolution => "subsumption_resolution",
            RuleName::Factoring => "factoring",
            RuleName::Superposition => "superposition",
            RuleName::SimultaneousSuperposition => "simultaneous_superposition",
            RuleName::Demodulation => "demodulation",
            RuleName::EqualityResolution => "equality_resolution",
            RuleName::AvatarDefinition => "avatar_definition",
            RuleName::AvatarSplit => "avatar_split",
            RuleName::AvatarComponent => "avatar_component",
            RuleName::AvatarContradiction => "avatar_contradiction",
            RuleName::Unsupported(s) => s,
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rule-specific participating data.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extras {
    /// `lits=i:j`: participating literal indices, one group per premise.
    pub lits: Option<Vec<Vec<usize>>>,
    /// `pos=0.2`: rewritten position inside the target literal.
    pub pos: Option<Vec<usize>>,
    /// `orient=1`: the equation rewrites right to left.
    pub orient: Option<bool>,
    /// `sim=1`: rewrite every occurrence in the conclusion.
    pub sim: Option<bool>,
    /// `split=1:0,2;2:1`: split ids with the premise literals they cover.
    pub split: Option<Vec<(u64, Vec<usize>)>>,
    /// `sp=1`: split id of a definition or component.
    pub sp: Option<u64>,
    /// Keys this format does not interpret, kept verbatim.
    pub other: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub id: u64,
    pub rule: RuleName,
    pub premises: Vec<u64>,
    /// Sorted, duplicate-free.
    pub conditions: Vec<Condition>,
    pub clause: Clause,
    pub extras: Extras,
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub version: u32,
    pub logic: Logic,
    pub symbols: SymbolTable,
    pub steps: Vec<Step>,
}

impl Trace {
    pub fn step(&self, id: u64) -> Option<&Step> {
        self.steps.iter().find(|s| s.id == id)
    }
}

fn join<T: fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn sort_params(ps: &[String]) -> String {
    if ps.is_empty() {
        String::new()
    } else {
        format!(" [{}]", ps.join(", "))
    }
}

impl fmt::Display for Extras {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(groups) = &self.lits {
            parts.push(format!("lits={}", groups.iter().map(|g| join(g, ",")).collect::<Vec<_>>().join(":")));
        }
        if let Some(p) = &self.pos {
            parts.push(format!("pos={}", join(p, ".")));
        }
        if let Some(o) = self.orient {
            parts.push(format!("orient={}", o as u8));
        }
        if let Some(s) = self.sim {
            parts.push(format!("sim={}", s as u8));
        }
        if let Some(sp) = &self.split {
            let groups: Vec<String> = sp.iter().map(|(id, ls)| format!("{id}:{}", join(ls, ","))).collect();
            parts.push(format!("split={}", groups.join(";")));
        }
        if let Some(sp) = self.sp {
            parts.push(format!("sp={sp}"));
        }
        for (k, v) in &self.other {
            parts.push(format!("{k}={v}"));
        }
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let clause = if self.clause.is_empty() { "$false".to_string() } else { format_clause(&self.clause) };
        write!(
            f,
            "step {} {} [{}] {{{}}} | {} | {}.",
            self.id,
            self.rule,
            join(&self.premises, ", "),
            join(&self.conditions, ","),
            clause,
            self.extras
        )
    }
}

/// Clause in trace syntax, with variable sorts annotated where they are not
/// `iota`.
pub fn format_clause(c: &Clause) -> String {
    c.literals.iter().map(|l: &Literal| l.map_terms(&annotate_vars).to_string()).collect::<Vec<_>>().join(" ; ")
}

fn annotate_vars(t: &Term) -> Term {
    match t {
        Term::Var { name, sort } if !sort.is_iota() => Term::Var { name: format!("{name}:{sort}"), sort: sort.clone() },
        Term::Var { .. } => t.clone(),
        Term::App { head, sort_args, args, sort } => Term::App {
            head: head.clone(),
            sort_args: sort_args.clone(),
            args: args.iter().map(annotate_vars).collect(),
            sort: sort.clone(),
        },
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "drv {} {}.", self.version, self.logic.as_str())?;
        for (name, arity) in self.symbols.sorts() {
            writeln!(f, "sort {name} {arity}.")?;
        }
        for SymbolDecl { name, sort_params: ps, args, kind } in self.symbols.symbols() {
            match kind {
                SymbolKind::Function { result } => {
                    writeln!(f, "fun {name}{} ({}) {result}.", sort_params(ps), join(args, ", "))?
                }
                SymbolKind::Predicate => writeln!(f, "pred {name}{} ({}).", sort_params(ps), join(args, ", "))?,
            }
        }
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

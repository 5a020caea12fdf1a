use std::fmt;

/// Name of the built-in sort of individuals.
pub const IOTA: &str = "iota";

/// A sort expression: a sort variable or an application of a sort constructor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Var(String),
    App(String, Vec<Sort>),
}

impl Sort {
    pub fn iota() -> Sort {
        Sort::App(IOTA.to_string(), Vec::new())
    }

    pub fn var(name: impl Into<String>) -> Sort {
        Sort::Var(name.into())
    }

    pub fn is_iota(&self) -> bool {
        matches!(self, Sort::App(h, args) if h == IOTA && args.is_empty())
    }

    pub fn occurs(&self, name: &str) -> bool {
        match self {
            Sort::Var(v) => v == name,
            Sort::App(_, args) => args.iter().any(|a| a.occurs(name)),
        }
    }

    /// Appends the sort variables of `self` not yet in `out`, in first-occurrence order.
    pub fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Sort::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Sort::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Sort::Var(_) => false,
            Sort::App(_, args) => args.iter().all(Sort::is_ground),
        }
    }

    pub fn rename(&self, map: &dyn Fn(&str) -> Option<String>) -> Sort {
        match self {
            Sort::Var(v) => Sort::Var(map(v).unwrap_or_else(|| v.clone())),
            Sort::App(h, args) => Sort::App(h.clone(), args.iter().map(|a| a.rename(map)).collect()),
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Var(v) => write!(f, "{v}"),
            Sort::App(h, args) if args.is_empty() => write!(f, "{h}"),
            Sort::App(h, args) => {
                write!(f, "{h}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

use std::sync::Arc;

use super::pretty::show;
use super::reduce::Reducer;
use super::term::{shift, subst, Name, Term, Tm};
use super::KernelError;

/// Local typing context. Each entry records the depth at which its type is
/// valid, so that rule contexts (whose types all live at the full depth) and
/// ordinary telescopes share one representation.
#[derive(Debug, Clone, Default)]
pub struct Ctx {
    entries: Vec<(Name, Tm, usize)>,
}

impl Ctx {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, name: Name, ty: Tm) {
        let d = self.entries.len();
        self.entries.push((name, ty, d));
    }

    /// Pushes an entry whose type is valid at `depth`.
    pub fn push_at(&mut self, name: Name, ty: Tm, depth: usize) {
        self.entries.push((name, ty, depth));
    }

    pub fn pop(&mut self) {
        self.entries.pop();
    }

    pub fn lookup(&self, i: usize) -> Option<Tm> {
        let n = self.entries.len();
        let (_, ty, depth) = self.entries.get(n.checked_sub(i + 1)?)?;
        Some(shift(ty, n - depth))
    }

    pub fn names(&self) -> Vec<Name> {
        self.entries.iter().map(|(n, _, _)| n.clone()).collect()
    }
}

/// Bidirectional checker for a fixed signature. Errors carry the path of the
/// offending subterm, e.g. `body.arg2.fun`.
pub struct Checker<'r, 's> {
    pub red: &'r Reducer<'s>,
    path: Vec<&'static str>,
    pub ctx: Ctx,
}

impl<'r, 's> Checker<'r, 's> {
    pub fn new(red: &'r Reducer<'s>) -> Self {
        Checker { red, path: Vec::new(), ctx: Ctx::new() }
    }

    fn err(&self, msg: String) -> KernelError {
        let path = if self.path.is_empty() { "<root>".to_string() } else { self.path.join(".") };
        KernelError::Type { path, msg }
    }

    fn show(&self, t: &Tm) -> String {
        let mut s = show(t, &self.ctx.names());
        if s.len() > 400 {
            let cut = (0..=400).rev().find(|&i| s.is_char_boundary(i)).unwrap_or(0);
            s.truncate(cut);
            s.push_str(" ...");
        }
        s
    }

    fn within<T>(
        &mut self,
        seg: &'static str,
        f: impl FnOnce(&mut Self) -> Result<T, KernelError>,
    ) -> Result<T, KernelError> {
        self.path.push(seg);
        let r = f(self);
        self.path.pop();
        r
    }

    fn under<T>(
        &mut self,
        x: &Name,
        a: &Tm,
        f: impl FnOnce(&mut Self) -> Result<T, KernelError>,
    ) -> Result<T, KernelError> {
        self.ctx.push(x.clone(), a.clone());
        let r = f(self);
        self.ctx.pop();
        r
    }

    /// Checks that `t` is a type or a kind and returns its sort.
    pub fn sort_of(&mut self, t: &Tm) -> Result<Tm, KernelError> {
        let s = self.infer(t)?;
        let s = self.red.whnf(&s)?;
        match &*s {
            Term::Type | Term::Kind => Ok(s),
            _ => Err(self.err(format!("{} is not a type (it has type {})", self.show(t), self.show(&s)))),
        }
    }

    /// Checks that `t : Type`.
    fn is_type(&mut self, t: &Tm) -> Result<(), KernelError> {
        let s = self.sort_of(t)?;
        match &*s {
            Term::Type => Ok(()),
            _ => Err(self.err(format!("{} is a kind, expected a type", self.show(t)))),
        }
    }

    pub fn infer(&mut self, t: &Tm) -> Result<Tm, KernelError> {
        match &**t {
            Term::Kind => Err(self.err("Kind has no type".into())),
            Term::Type => Ok(Arc::new(Term::Kind)),
            Term::Const(c) => match self.red.sig.get(c) {
                Some(k) => Ok(k.ty.clone()),
                None => Err(self.err(format!("unknown constant {c}"))),
            },
            Term::Var(i) => self.ctx.lookup(*i).ok_or_else(|| self.err(format!("unbound variable #{i}"))),
            Term::App(f, a) => {
                let ft = self.within("fun", |c| c.infer(f))?;
                let ft = self.red.whnf(&ft)?;
                match &*ft {
                    Term::Pi(_, dom, cod) => {
                        let (dom, cod) = (dom.clone(), cod.clone());
                        self.within("arg", |c| c.check(a, &dom))?;
                        Ok(subst(&cod, a))
                    }
                    _ => Err(self.err(format!(
                        "{} is applied but has non-product type {}",
                        self.show(f),
                        self.show(&ft)
                    ))),
                }
            }
            Term::Lam(x, a, b) => {
                self.within("dom", |c| c.is_type(a))?;
                let bt = self.under(x, a, |c| c.within("body", |c| c.infer(b)))?;
                if matches!(&*bt, Term::Kind) {
                    return Err(self.err("abstraction over a kind".into()));
                }
                Ok(Arc::new(Term::Pi(x.clone(), a.clone(), bt)))
            }
            Term::Pi(x, a, b) => {
                self.within("dom", |c| c.is_type(a))?;
                self.under(x, a, |c| c.within("cod", |c| c.sort_of(b)))
            }
        }
    }

    pub fn check(&mut self, t: &Tm, expected: &Tm) -> Result<(), KernelError> {
        if let Term::Lam(x, a, b) = &**t {
            let e = self.red.whnf(expected)?;
            if let Term::Pi(_, dom, cod) = &*e {
                self.within("dom", |c| c.is_type(a))?;
                if !self.red.conv(a, dom)? {
                    return Err(self.err(format!(
                        "binder {x} has domain {} but {} was expected",
                        self.show(a),
                        self.show(dom)
                    )));
                }
                let cod = cod.clone();
                return self.under(x, a, |c| c.within("body", |c| c.check(b, &cod)));
            }
        }
        let inferred = self.infer(t)?;
        if self.red.conv(&inferred, expected)? {
            Ok(())
        } else {
            Err(self.err(format!(
                "{} has type {} but {} was expected",
                self.show(t),
                self.show(&inferred),
                self.show(expected)
            )))
        }
    }
}

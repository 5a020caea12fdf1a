//! Naive reference checker for scripts: named terms, capture-avoiding
//! substitution and conversion by full normalization.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use lampi::dk::{Document, Expr, Item};

/// Named term. Bound variables start with `#`, rule variables with `?`;
/// every other identifier is a constant.
#[derive(Clone, Debug)]
pub enum R {
    Type,
    Kind,
    Id(String),
    App(Box<R>, Box<R>),
    Lam(String, Box<R>, Box<R>),
    Pi(String, Box<R>, Box<R>),
}

static FRESH: AtomicUsize = AtomicUsize::new(0);

fn fresh() -> String {
    format!("#{}", FRESH.fetch_add(1, Ordering::Relaxed))
}

fn app(f: R, a: R) -> R {
    R::App(Box::new(f), Box::new(a))
}

fn apps(f: R, args: impl IntoIterator<Item = R>) -> R {
    args.into_iter().fold(f, app)
}

/// Converts surface syntax, renaming binders apart. `scope` maps surface
/// names to internal ones; `rule_vars` become `?` variables.
pub fn from_expr(e: &Expr, scope: &mut Vec<(String, String)>) -> R {
    match e {
        Expr::Type => R::Type,
        Expr::Ident(x) => match scope.iter().rev().find(|(s, _)| s == x) {
            Some((_, v)) => R::Id(v.clone()),
            None => R::Id(x.clone()),
        },
        Expr::App(f, args) => {
            let f = from_expr(f, scope);
            let args: Vec<R> = args.iter().map(|a| from_expr(a, scope)).collect();
            apps(f, args)
        }
        Expr::Lam(x, t, b) | Expr::Pi(Some(x), t, b) => {
            let t = from_expr(t, scope);
            let v = fresh();
            scope.push((x.clone(), v.clone()));
            let b = from_expr(b, scope);
            scope.pop();
            if matches!(e, Expr::Lam(..)) {
                R::Lam(v, Box::new(t), Box::new(b))
            } else {
                R::Pi(v, Box::new(t), Box::new(b))
            }
        }
        Expr::Pi(None, t, b) => R::Pi(fresh(), Box::new(from_expr(t, scope)), Box::new(from_expr(b, scope))),
    }
}

fn is_var(x: &str) -> bool {
    x.starts_with('#') || x.starts_with('?')
}

fn free_vars(r: &R, out: &mut HashSet<String>) {
    match r {
        R::Type | R::Kind => {}
        R::Id(x) => {
            if is_var(x) {
                out.insert(x.clone());
            }
        }
        R::App(f, a) => {
            free_vars(f, out);
            free_vars(a, out);
        }
        R::Lam(x, t, b) | R::Pi(x, t, b) => {
            free_vars(t, out);
            let mut inner = HashSet::new();
            free_vars(b, &mut inner);
            inner.remove(x);
            out.extend(inner);
        }
    }
}

/// Capture-avoiding `r[x := v]`.
pub fn subst(r: &R, x: &str, v: &R) -> R {
    let mut fv = HashSet::new();
    free_vars(v, &mut fv);
    subst_with(r, x, v, &fv)
}

fn subst_with(r: &R, x: &str, v: &R, fv: &HashSet<String>) -> R {
    match r {
        R::Type | R::Kind => r.clone(),
        R::Id(y) => {
            if y == x {
                v.clone()
            } else {
                r.clone()
            }
        }
        R::App(f, a) => app(subst_with(f, x, v, fv), subst_with(a, x, v, fv)),
        R::Lam(y, t, b) | R::Pi(y, t, b) => {
            let t = subst_with(t, x, v, fv);
            let (y, b) = if y == x {
                (y.clone(), (**b).clone())
            } else if fv.contains(y) {
                let z = fresh();
                let b = subst(b, y, &R::Id(z.clone()));
                (z, subst_with(&b, x, v, fv))
            } else {
                (y.clone(), subst_with(b, x, v, fv))
            };
            if matches!(r, R::Lam(..)) {
                R::Lam(y, Box::new(t), Box::new(b))
            } else {
                R::Pi(y, Box::new(t), Box::new(b))
            }
        }
    }
}

/// Alpha-invariant rendering with de Bruijn indices.
pub fn key(r: &R) -> String {
    fn go(r: &R, env: &mut Vec<String>, out: &mut String) {
        match r {
            R::Type => out.push_str("Type"),
            R::Kind => out.push_str("Kind"),
            R::Id(x) => match env.iter().rposition(|y| y == x) {
                Some(k) => out.push_str(&format!("#{}", env.len() - 1 - k)),
                None => out.push_str(&format!("c:{x}")),
            },
            R::App(f, a) => {
                out.push_str("(A ");
                go(f, env, out);
                out.push(' ');
                go(a, env, out);
                out.push(')');
            }
            R::Lam(x, t, b) | R::Pi(x, t, b) => {
                out.push_str(if matches!(r, R::Lam(..)) { "(L " } else { "(P " });
                go(t, env, out);
                out.push(' ');
                env.push(x.clone());
                go(b, env, out);
                env.pop();
                out.push(')');
            }
        }
    }
    let mut out = String::new();
    go(r, &mut Vec::new(), &mut out);
    out
}

fn spine(r: &R) -> (&R, Vec<&R>) {
    let mut args = Vec::new();
    let mut h = r;
    while let R::App(f, a) = h {
        args.push(&**a);
        h = f;
    }
    args.reverse();
    (h, args)
}

struct RefRule {
    lhs_args: Vec<R>,
    rhs: R,
}

struct Constant {
    ty: R,
    body: Option<R>,
    definable: bool,
}

#[derive(Default)]
pub struct Reference {
    consts: HashMap<String, Constant>,
    rules: HashMap<String, Vec<RefRule>>,
}

fn matches(p: &R, t: &R, bind: &mut HashMap<String, R>) -> bool {
    match p {
        R::Id(x) if x.starts_with('?') => match bind.get(x) {
            Some(prev) => key(prev) == key(t),
            None => {
                bind.insert(x.clone(), t.clone());
                true
            }
        },
        _ => {
            let (ph, pargs) = spine(p);
            let (th, targs) = spine(t);
            match (ph, th) {
                (R::Id(a), R::Id(b)) if a == b && !is_var(b) && pargs.len() == targs.len() => {
                    pargs.iter().zip(targs).all(|(p, t)| matches(p, t, bind))
                }
                _ => false,
            }
        }
    }
}

impl Reference {
    pub fn new() -> Self {
        Self::default()
    }

    /// Full normal form: arguments first, then head redexes, then again.
    pub fn nf(&self, r: &R) -> R {
        match r {
            R::Type | R::Kind => r.clone(),
            R::Lam(x, t, b) => R::Lam(x.clone(), Box::new(self.nf(t)), Box::new(self.nf(b))),
            R::Pi(x, t, b) => R::Pi(x.clone(), Box::new(self.nf(t)), Box::new(self.nf(b))),
            _ => {
                let (h, args) = spine(r);
                let args: Vec<R> = args.into_iter().map(|a| self.nf(a)).collect();
                match h {
                    R::Lam(x, _, b) => {
                        let body = subst(b, x, &args[0]);
                        self.nf(&apps(body, args[1..].iter().cloned()))
                    }
                    R::Id(c) if !is_var(c) => {
                        if let Some(body) = self.consts.get(c).and_then(|k| k.body.as_ref()) {
                            return self.nf(&apps(body.clone(), args));
                        }
                        for rule in self.rules.get(c).map(|v| v.as_slice()).unwrap_or(&[]) {
                            let k = rule.lhs_args.len();
                            if k > args.len() {
                                continue;
                            }
                            let mut bind = HashMap::new();
                            if rule.lhs_args.iter().zip(&args).all(|(p, t)| matches(p, t, &mut bind)) {
                                let rhs = bind.iter().fold(rule.rhs.clone(), |acc, (x, v)| subst(&acc, x, v));
                                return self.nf(&apps(rhs, args[k..].iter().cloned()));
                            }
                        }
                        apps(h.clone(), args)
                    }
                    _ if args.is_empty() => r.clone(),
                    _ => apps(self.nf(h), args),
                }
            }
        }
    }

    pub fn conv(&self, a: &R, b: &R) -> bool {
        key(&self.nf(a)) == key(&self.nf(b))
    }

    pub fn infer(&self, ctx: &mut Vec<(String, R)>, t: &R) -> Result<R, String> {
        match t {
            R::Type => Ok(R::Kind),
            R::Kind => Err("Kind has no type".into()),
            R::Id(x) if is_var(x) => {
                ctx.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t.clone()).ok_or_else(|| format!("unbound {x}"))
            }
            R::Id(c) => self.consts.get(c).map(|k| k.ty.clone()).ok_or_else(|| format!("unknown {c}")),
            R::App(f, a) => {
                let ft = self.nf(&self.infer(ctx, f)?);
                let R::Pi(x, dom, cod) = ft else { return Err("application of a non-product".into()) };
                let at = self.infer(ctx, a)?;
                if !self.conv(&at, &dom) {
                    return Err("argument type mismatch".into());
                }
                Ok(subst(&cod, &x, a))
            }
            R::Lam(x, a, b) => {
                self.expect_type(ctx, a)?;
                ctx.push((x.clone(), (**a).clone()));
                let bt = self.infer(ctx, b);
                ctx.pop();
                let bt = bt?;
                if matches!(self.nf(&bt), R::Kind) {
                    return Err("abstraction over a kind".into());
                }
                Ok(R::Pi(x.clone(), a.clone(), Box::new(bt)))
            }
            R::Pi(x, a, b) => {
                self.expect_type(ctx, a)?;
                ctx.push((x.clone(), (**a).clone()));
                let s = self.infer(ctx, b).map(|s| self.nf(&s));
                ctx.pop();
                match s? {
                    s @ (R::Type | R::Kind) => Ok(s),
                    _ => Err("codomain is not a type".into()),
                }
            }
        }
    }

    fn expect_type(&self, ctx: &mut Vec<(String, R)>, a: &R) -> Result<(), String> {
        match self.nf(&self.infer(ctx, a)?) {
            R::Type => Ok(()),
            _ => Err("domain is not a type".into()),
        }
    }

    fn expect_sort(&self, t: &R) -> Result<(), String> {
        match self.nf(&self.infer(&mut Vec::new(), t)?) {
            R::Type | R::Kind => Ok(()),
            _ => Err("not a type".into()),
        }
    }

    fn fresh_name(&self, name: &str) -> Result<(), String> {
        if self.consts.contains_key(name) {
            return Err(format!("{name} redeclared"));
        }
        Ok(())
    }

    pub fn add(&mut self, item: &Item) -> Result<(), String> {
        match item {
            Item::Note(_) => Ok(()),
            Item::Decl { name, ty, definable } => {
                self.fresh_name(name)?;
                let ty = from_expr(ty, &mut Vec::new());
                self.expect_sort(&ty)?;
                self.consts.insert(name.clone(), Constant { ty, body: None, definable: *definable });
                Ok(())
            }
            Item::Def { name, ty, body } => {
                self.fresh_name(name)?;
                let ty = from_expr(ty, &mut Vec::new());
                let body = from_expr(body, &mut Vec::new());
                self.expect_sort(&ty)?;
                let bt = self.infer(&mut Vec::new(), &body)?;
                if !self.conv(&bt, &ty) {
                    return Err(format!("body of {name} does not have its declared type"));
                }
                self.consts.insert(name.clone(), Constant { ty, body: Some(body), definable: false });
                Ok(())
            }
            Item::Rule { ctx, lhs, rhs } => {
                let mut scope: Vec<(String, String)> = ctx.iter().map(|x| (x.clone(), format!("?{x}"))).collect();
                let lhs = from_expr(lhs, &mut scope);
                let rhs = from_expr(rhs, &mut scope);
                let (h, args) = spine(&lhs);
                let R::Id(head) = h else { return Err("rule head is not a constant".into()) };
                match self.consts.get(head) {
                    Some(k) if k.definable && k.body.is_none() => {}
                    _ => return Err(format!("{head} cannot head a rule")),
                }
                let mut lv = HashSet::new();
                free_vars(&lhs, &mut lv);
                let mut rv = HashSet::new();
                free_vars(&rhs, &mut rv);
                if ctx.iter().any(|x| !lv.contains(&format!("?{x}"))) || !rv.is_subset(&lv) {
                    return Err("rule variable missing from the left-hand side".into());
                }
                let rule = RefRule { lhs_args: args.into_iter().cloned().collect(), rhs };
                self.rules.entry(head.clone()).or_default().push(rule);
                Ok(())
            }
        }
    }

    /// Checks a whole document; the error names the first rejected item.
    pub fn check_document(doc: &Document) -> Result<Reference, (usize, String)> {
        let mut r = Reference::new();
        for (i, item) in doc.items().enumerate() {
            r.add(item).map_err(|e| (i, e))?;
        }
        Ok(r)
    }
}

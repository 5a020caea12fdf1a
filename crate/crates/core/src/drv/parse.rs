use std::collections::{BTreeMap, HashSet};

use super::{DrvError, Extras, Logic, RuleName, Step, Trace};
use crate::embedding::{Condition, SymbolDecl, SymbolKind, SymbolTable};
use crate::fol::{Clause, Literal, Sort, Term};

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
    line: usize,
    base: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> DrvError {
        DrvError::Syntax { line: self.line, col: self.base + self.pos + 1, msg: msg.into() }
    }

    fn ws(&mut self) {
        while let Some(c) = self.s[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.s[self.pos..].chars().next()
    }

    fn starts_with(&mut self, p: &str) -> bool {
        self.ws();
        self.s[self.pos..].starts_with(p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), DrvError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> Result<&'a str, DrvError> {
        self.ws();
        let rest = &self.s[self.pos..];
        let len = rest
            .char_indices()
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '$')))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected an identifier"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<u64, DrvError> {
        self.ws();
        let rest = &self.s[self.pos..];
        let len = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return Err(self.err("expected a number"));
        }
        self.pos += len;
        rest[..len].parse().map_err(|_| self.err("number out of range"))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn is_var(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

fn parse_sort(c: &mut Cursor<'_>) -> Result<Sort, DrvError> {
    let name = c.word()?;
    if is_var(name) {
        return Ok(Sort::Var(name.to_string()));
    }
    let mut args = Vec::new();
    if c.eat('(') && !c.eat(')') {
        loop {
            args.push(parse_sort(c)?);
            if c.eat(')') {
                break;
            }
            c.expect(',')?;
        }
    }
    Ok(Sort::App(name.to_string(), args))
}

fn parse_sort_list(c: &mut Cursor<'_>, open: char, close: char) -> Result<Vec<Sort>, DrvError> {
    let mut out = Vec::new();
    c.expect(open)?;
    if c.eat(close) {
        return Ok(out);
    }
    loop {
        out.push(parse_sort(c)?);
        if c.eat(close) {
            return Ok(out);
        }
        c.expect(',')?;
    }
}

#[derive(Debug, Clone)]
enum Raw {
    Var(String, Option<Sort>, usize),
    App(String, Vec<Sort>, Vec<Raw>, usize),
}

#[derive(Debug, Clone)]
enum RawLit {
    Pred(bool, String, Vec<Sort>, Vec<Raw>, usize),
    Eq(bool, Raw, Raw),
}

fn parse_raw(c: &mut Cursor<'_>) -> Result<Raw, DrvError> {
    c.ws();
    let at = c.base + c.pos + 1;
    let name = c.word()?;
    if is_var(name) {
        let ann = if c.eat(':') { Some(parse_sort(c)?) } else { None };
        return Ok(Raw::Var(name.to_string(), ann, at));
    }
    let sorts = if c.peek() == Some('[') { parse_sort_list(c, '[', ']')? } else { Vec::new() };
    let mut args = Vec::new();
    if c.eat('(') && !c.eat(')') {
        loop {
            args.push(parse_raw(c)?);
            if c.eat(')') {
                break;
            }
            c.expect(',')?;
        }
    }
    Ok(Raw::App(name.to_string(), sorts, args, at))
}

fn parse_literal(c: &mut Cursor<'_>) -> Result<RawLit, DrvError> {
    if c.starts_with("!=") {
        c.pos += 2;
        return Ok(RawLit::Eq(false, parse_raw(c)?, parse_raw(c)?));
    }
    if c.eat('=') {
        return Ok(RawLit::Eq(true, parse_raw(c)?, parse_raw(c)?));
    }
    let positive = !c.eat('~');
    match parse_raw(c)? {
        Raw::App(h, s, a, at) => Ok(RawLit::Pred(positive, h, s, a, at)),
        Raw::Var(..) => Err(c.err("a variable is not a literal")),
    }
}

/// Per-clause elaboration of raw terms against the symbol table.
struct Elab<'t> {
    table: &'t SymbolTable,
    vars: BTreeMap<String, Sort>,
    logic: Logic,
    changed: bool,
}

type ElabResult<T> = Result<T, (usize, String)>;

impl<'t> Elab<'t> {
    fn check_sort(&self, s: &Sort, at: usize) -> ElabResult<()> {
        match s {
            Sort::Var(_) if self.logic == Logic::Polymorphic => Ok(()),
            Sort::Var(v) => Err((at, format!("sort variable {v} outside a polymorphic trace"))),
            Sort::App(h, args) => {
                match self.table.sort_arity(h) {
                    Some(n) if n == args.len() => {}
                    Some(n) => return Err((at, format!("sort {h} expects {n} arguments"))),
                    None => return Err((at, format!("unknown sort {h}"))),
                }
                args.iter().try_for_each(|a| self.check_sort(a, at))
            }
        }
    }

    fn note(&mut self, v: &str, s: &Sort, at: usize) -> ElabResult<()> {
        match self.vars.get(v) {
            Some(prev) if prev == s => Ok(()),
            Some(prev) => Err((at, format!("variable {v} used at sorts {prev} and {s}"))),
            None => {
                self.vars.insert(v.to_string(), s.clone());
                self.changed = true;
                Ok(())
            }
        }
    }

    /// Instantiated argument sorts and result sort of a symbol occurrence.
    fn profile(&self, name: &str, sorts: &[Sort], nargs: usize, at: usize) -> ElabResult<(&'t SymbolDecl, Vec<Sort>)> {
        let d = self.table.symbol(name).ok_or_else(|| (at, format!("undeclared symbol {name}")))?;
        if d.sort_params.len() != sorts.len() {
            return Err((at, format!("{name} expects {} sort arguments, got {}", d.sort_params.len(), sorts.len())));
        }
        if d.args.len() != nargs {
            return Err((at, format!("{name} expects {} arguments, got {nargs}", d.args.len())));
        }
        for s in sorts {
            self.check_sort(s, at)?;
        }
        let inst = |s: &Sort| {
            let mut sub = crate::fol::Substitution::new();
            for (p, a) in d.sort_params.iter().zip(sorts) {
                sub.sorts.insert(p.clone(), a.clone());
            }
            sub.apply_sort(s)
        };
        Ok((d, d.args.iter().map(inst).collect()))
    }

    fn result_sort(&self, d: &SymbolDecl, sorts: &[Sort]) -> Option<Sort> {
        match &d.kind {
            SymbolKind::Function { result } => {
                let mut sub = crate::fol::Substitution::new();
                for (p, a) in d.sort_params.iter().zip(sorts) {
                    sub.sorts.insert(p.clone(), a.clone());
                }
                Some(sub.apply_sort(result))
            }
            SymbolKind::Predicate => None,
        }
    }

    fn infer(&mut self, r: &Raw, expected: Option<&Sort>) -> ElabResult<Option<Sort>> {
        match r {
            Raw::Var(v, ann, at) => {
                if let Some(a) = ann {
                    self.check_sort(a, *at)?;
                    self.note(v, a, *at)?;
                }
                if let Some(e) = expected {
                    self.note(v, e, *at)?;
                }
                Ok(self.vars.get(v).cloned())
            }
            Raw::App(h, sorts, args, at) => {
                let (d, arg_sorts) = self.profile(h, sorts, args.len(), *at)?;
                let Some(res) = self.result_sort(d, sorts) else {
                    return Err((*at, format!("predicate {h} used as a term")));
                };
                for (a, s) in args.iter().zip(&arg_sorts) {
                    self.infer(a, Some(s))?;
                }
                Ok(Some(res))
            }
        }
    }

    fn infer_lit(&mut self, l: &RawLit) -> ElabResult<()> {
        match l {
            RawLit::Pred(_, h, sorts, args, at) => {
                let (d, arg_sorts) = self.profile(h, sorts, args.len(), *at)?;
                if self.result_sort(d, sorts).is_some() {
                    return Err((*at, format!("function {h} used as a predicate")));
                }
                for (a, s) in args.iter().zip(&arg_sorts) {
                    self.infer(a, Some(s))?;
                }
            }
            RawLit::Eq(_, a, b) => {
                let sa = self.infer(a, None)?;
                let sb = self.infer(b, sa.as_ref())?;
                if sa.is_none() {
                    self.infer(a, sb.as_ref())?;
                }
            }
        }
        Ok(())
    }

    fn build(&self, r: &Raw, expected: Option<&Sort>) -> ElabResult<Term> {
        let t = match r {
            Raw::Var(v, _, _) => Term::var(v.clone(), self.vars.get(v).cloned().unwrap_or_else(Sort::iota)),
            Raw::App(h, sorts, args, at) => {
                let (d, arg_sorts) = self.profile(h, sorts, args.len(), *at)?;
                let res = self.result_sort(d, sorts).expect("checked during inference");
                let args =
                    args.iter().zip(&arg_sorts).map(|(a, s)| self.build(a, Some(s))).collect::<Result<_, _>>()?;
                Term::app(h.clone(), sorts.clone(), args, res)
            }
        };
        if let Some(e) = expected {
            if t.sort() != e {
                let at = match r {
                    Raw::Var(_, _, at) | Raw::App(_, _, _, at) => *at,
                };
                return Err((at, format!("{t} has sort {} but {e} is expected", t.sort())));
            }
        }
        Ok(t)
    }

    fn build_lit(&self, l: &RawLit) -> ElabResult<Literal> {
        match l {
            RawLit::Pred(pos, h, sorts, args, at) => {
                let (_, arg_sorts) = self.profile(h, sorts, args.len(), *at)?;
                let args =
                    args.iter().zip(&arg_sorts).map(|(a, s)| self.build(a, Some(s))).collect::<Result<_, _>>()?;
                Ok(Literal::pred(*pos, h.clone(), sorts.clone(), args))
            }
            RawLit::Eq(pos, a, b) => {
                let a = self.build(a, None)?;
                let b = self.build(b, Some(&a.sort().clone()))?;
                Ok(Literal::eq(*pos, a, b))
            }
        }
    }
}

fn elaborate(table: &SymbolTable, logic: Logic, lits: &[RawLit]) -> ElabResult<Clause> {
    let mut e = Elab { table, vars: BTreeMap::new(), logic, changed: true };
    while e.changed {
        e.changed = false;
        for l in lits {
            e.infer_lit(l)?;
        }
    }
    let lits = lits.iter().map(|l| e.build_lit(l)).collect::<Result<Vec<_>, _>>()?;
    let clause = Clause::new(lits);
    let sorts: HashSet<&String> = clause.sort_vars.iter().collect();
    if let Some((v, _)) = clause.term_vars.iter().find(|(v, _)| sorts.contains(v)) {
        return Err((1, format!("{v} is used both as a sort and as a term variable")));
    }
    Ok(clause)
}

fn parse_usize_list(s: &str, sep: char) -> Option<Vec<usize>> {
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(sep).map(|x| x.trim().parse().ok()).collect()
}

fn parse_extras(c: &Cursor<'_>, text: &str) -> Result<Extras, DrvError> {
    let mut ex = Extras::default();
    for tok in text.split_whitespace() {
        let Some((k, v)) = tok.split_once('=') else {
            return Err(c.err(format!("extra {tok:?} is not of the form key=value")));
        };
        let bad = || c.err(format!("malformed value for {k}: {v:?}"));
        match k {
            "lits" => {
                ex.lits = Some(v.split(':').map(|g| parse_usize_list(g, ',')).collect::<Option<_>>().ok_or_else(bad)?)
            }
            "pos" => ex.pos = Some(parse_usize_list(v, '.').filter(|p| !p.is_empty()).ok_or_else(bad)?),
            "orient" | "sim" => {
                let b = match v {
                    "0" => false,
                    "1" => true,
                    _ => return Err(bad()),
                };
                if k == "orient" {
                    ex.orient = Some(b);
                } else {
                    ex.sim = Some(b);
                }
            }
            "split" => {
                let groups = v
                    .split(';')
                    .map(|g| {
                        let (id, ls) = g.split_once(':')?;
                        Some((id.parse().ok()?, parse_usize_list(ls, ',')?))
                    })
                    .collect::<Option<_>>()
                    .ok_or_else(bad)?;
                ex.split = Some(groups);
            }
            "sp" => ex.sp = Some(v.parse().map_err(|_| bad())?),
            _ => ex.other.push((k.to_string(), v.to_string())),
        }
    }
    Ok(ex)
}

fn parse_conditions(c: &mut Cursor<'_>) -> Result<Vec<Condition>, DrvError> {
    let mut out = Vec::new();
    c.expect('{')?;
    if !c.eat('}') {
        loop {
            let positive = !c.eat('-');
            out.push(Condition { split: c.number()?, positive });
            if c.eat('}') {
                break;
            }
            c.expect(',')?;
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Splits `s` at top-level occurrences of `sep`.
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

struct Parser {
    version: Option<(u32, Logic)>,
    table: SymbolTable,
    steps: Vec<Step>,
    seen: HashSet<u64>,
}

impl Parser {
    fn logic(&self) -> Logic {
        self.version.map(|(_, l)| l).unwrap_or(Logic::Cnf)
    }

    fn statement(&mut self, line: usize, base: usize, text: &str) -> Result<(), DrvError> {
        let mut c = Cursor { s: text, pos: 0, line, base };
        let kw = c.word()?;
        if kw != "drv" && self.version.is_none() {
            return Err(c.err("the trace must start with a drv header"));
        }
        match kw {
            "drv" => {
                if self.version.is_some() {
                    return Err(c.err("duplicate drv header"));
                }
                let v = c.number()? as u32;
                if v != 1 {
                    return Err(c.err(format!("unsupported format version {v}")));
                }
                let logic = match c.word()? {
                    "cnf" => Logic::Cnf,
                    "many-sorted" => Logic::ManySorted,
                    "polymorphic" => Logic::Polymorphic,
                    other => return Err(c.err(format!("unknown logic {other}"))),
                };
                self.version = Some((v, logic));
            }
            "sort" => {
                let at = c.pos;
                let name = c.word()?.to_string();
                let arity = c.number()? as usize;
                if self.logic() == Logic::Cnf {
                    return Err(c.err("sort declarations need a many-sorted or polymorphic trace"));
                }
                if arity > 0 && self.logic() != Logic::Polymorphic {
                    return Err(c.err("sort constructors with arguments need a polymorphic trace"));
                }
                if is_var(&name) {
                    c.pos = at;
                    return Err(c.err("sort names start with a lower-case letter"));
                }
                self.table.add_sort(&name, arity).map_err(|e| c.err(e.to_string()))?;
            }
            "fun" | "pred" => {
                let name = c.word()?.to_string();
                if is_var(&name) {
                    return Err(c.err("symbol names start with a lower-case letter"));
                }
                let mut params = Vec::new();
                if c.peek() == Some('[') {
                    for s in parse_sort_list(&mut c, '[', ']')? {
                        match s {
                            Sort::Var(v) => params.push(v),
                            other => return Err(c.err(format!("sort parameter {other} is not a variable"))),
                        }
                    }
                }
                if !params.is_empty() && self.logic() != Logic::Polymorphic {
                    return Err(c.err("sort parameters need a polymorphic trace"));
                }
                let args = parse_sort_list(&mut c, '(', ')')?;
                let kind = if kw == "fun" {
                    SymbolKind::Function { result: parse_sort(&mut c)? }
                } else {
                    SymbolKind::Predicate
                };
                if self.logic() == Logic::Cnf {
                    let all_iota = args.iter().chain(match &kind {
                        SymbolKind::Function { result } => Some(result),
                        SymbolKind::Predicate => None,
                    });
                    if let Some(s) = all_iota.into_iter().find(|s| !s.is_iota()) {
                        return Err(c.err(format!("sort {s} in a cnf trace")));
                    }
                }
                self.table
                    .add_symbol(SymbolDecl { name, sort_params: params, args, kind })
                    .map_err(|e| c.err(e.to_string()))?;
            }
            "step" => return self.step(c),
            other => return Err(c.err(format!("unknown statement {other}"))),
        }
        if !c.at_end() {
            return Err(c.err("unexpected trailing input"));
        }
        Ok(())
    }

    fn step(&mut self, mut c: Cursor<'_>) -> Result<(), DrvError> {
        let id = c.number()?;
        let rule = RuleName::parse(c.word()?);
        c.expect('[')?;
        let mut premises = Vec::new();
        if !c.eat(']') {
            loop {
                premises.push(c.number()?);
                if c.eat(']') {
                    break;
                }
                c.expect(',')?;
            }
        }
        let conditions = parse_conditions(&mut c)?;
        c.expect('|')?;
        let rest = &c.s[c.pos..];
        let parts: Vec<&str> = rest.splitn(2, '|').collect();
        if parts.len() != 2 {
            return Err(c.err("expected '|' after the clause"));
        }
        let clause_start = c.pos;
        let clause_text = parts[0];
        let mut raw = Vec::new();
        if clause_text.trim() != "$false" && !clause_text.trim().is_empty() {
            for (off, lit) in split_top(clause_text, ';') {
                let mut lc = Cursor { s: lit, pos: 0, line: c.line, base: c.base + clause_start + off };
                raw.push(parse_literal(&mut lc)?);
                if !lc.at_end() {
                    return Err(lc.err("unexpected input after literal"));
                }
            }
        }
        let extras_cursor = Cursor { s: c.s, pos: clause_start + parts[0].len() + 1, line: c.line, base: c.base };
        let extras = parse_extras(&extras_cursor, parts[1])?;

        let step_err = |msg: String| DrvError::Step { id, msg };
        if !self.seen.insert(id) {
            return Err(step_err("duplicate step id".into()));
        }
        for p in &premises {
            if !self.steps.iter().any(|s| s.id == *p) {
                return Err(step_err(format!("premise {p} does not precede this step")));
            }
        }
        let clause = elaborate(&self.table, self.logic(), &raw)
            .map_err(|(col, msg)| step_err(format!("column {col}: {msg}")))?;
        let step = Step { id, rule, premises, conditions, clause, extras };
        self.check_extras(&step)?;
        self.steps.push(step);
        Ok(())
    }

    fn check_extras(&self, step: &Step) -> Result<(), DrvError> {
        let err = |msg: String| DrvError::Step { id: step.id, msg };
        if let Some(groups) = &step.extras.lits {
            if groups.len() != step.premises.len() {
                return Err(err(format!("lits has {} groups for {} premises", groups.len(), step.premises.len())));
            }
            for (g, p) in groups.iter().zip(&step.premises) {
                let n = self.steps.iter().find(|s| s.id == *p).map(|s| s.clause.literals.len()).unwrap_or(0);
                if let Some(i) = g.iter().find(|&&i| i >= n) {
                    return Err(err(format!("literal index {i} out of range for premise {p}")));
                }
            }
        }
        if let (Some(split), Some(p)) = (&step.extras.split, step.premises.first()) {
            let n = self.steps.iter().find(|s| s.id == *p).map(|s| s.clause.literals.len()).unwrap_or(0);
            if let Some(i) = split.iter().flat_map(|(_, ls)| ls).find(|&&i| i >= n) {
                return Err(err(format!("literal index {i} out of range for premise {p}")));
            }
        }
        Ok(())
    }
}

/// Parses and validates a trace.
pub fn parse_trace(src: &str) -> Result<Trace, DrvError> {
    let mut p = Parser { version: None, table: SymbolTable::new(), steps: Vec::new(), seen: HashSet::new() };
    for (i, raw_line) in src.lines().enumerate() {
        let line = i + 1;
        let code = raw_line.split('%').next().unwrap_or("");
        let trimmed_start = code.len() - code.trim_start().len();
        let text = code.trim();
        if text.is_empty() {
            continue;
        }
        let Some(body) = text.strip_suffix('.') else {
            return Err(DrvError::Syntax {
                line,
                col: trimmed_start + text.len() + 1,
                msg: "statement must end with '.'".into(),
            });
        };
        p.statement(line, trimmed_start, body)?;
    }
    let Some((version, logic)) = p.version else {
        return Err(DrvError::Syntax { line: 1, col: 1, msg: "missing drv header".into() });
    };
    Ok(Trace { version, logic, symbols: p.table, steps: p.steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUP: &str = "\
drv 1 cnf.
fun c () iota.
fun d () iota.
fun e () iota.
fun f (iota, iota, iota) iota.
fun g (iota) iota.
pred p (iota).
pred q (iota).
pred r (iota).
step 1 input [] {} | p(X) ; = f(c, X, Z) g(X) ; != X c | .
step 2 input [] {} | q(Y) ; != f(Y, d, W) e ; r(f(c, d, W)) | .
step 3 superposition [1, 2] {} | p(d) ; != d c ; q(c) ; != g(d) e ; r(f(c, d, W)) | lits=1:1 pos=0 orient=0.
";

    #[test]
    fn parses_superposition_example() {
        let t = parse_trace(SUP).unwrap();
        assert_eq!(t.steps.len(), 3);
        let s3 = &t.steps[2];
        assert_eq!(s3.rule, RuleName::Superposition);
        assert_eq!(s3.premises, vec![1, 2]);
        assert_eq!(s3.extras.lits, Some(vec![vec![1], vec![1]]));
        assert_eq!(s3.extras.pos, Some(vec![0]));
        assert_eq!(s3.clause.term_vars.len(), 1);
        let c1 = &t.steps[0].clause;
        let names: Vec<_> = c1.term_vars.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["X", "Z"]);
    }

    #[test]
    fn print_parse_roundtrip() {
        let t = parse_trace(SUP).unwrap();
        let printed = t.to_string();
        let t2 = parse_trace(&printed).unwrap();
        assert_eq!(t.steps, t2.steps);
        assert_eq!(printed, t2.to_string());
    }

    #[test]
    fn infers_variable_sorts() {
        let src = "\
drv 1 polymorphic.
sort list 1.
fun nil [A] () list(A).
pred p [A] (list(A)).
step 1 input [] {} | p[A](X) ; = X Y ; != Z:list(iota) nil[iota] | .
";
        let t = parse_trace(src).unwrap();
        let c = &t.steps[0].clause;
        let list_a = Sort::App("list".into(), vec![Sort::var("A")]);
        assert_eq!(c.term_vars[0], ("X".to_string(), list_a.clone()));
        assert_eq!(c.term_vars[1], ("Y".to_string(), list_a));
        assert_eq!(c.sort_vars, vec!["A".to_string()]);
        let printed = t.to_string();
        assert_eq!(parse_trace(&printed).unwrap().steps, t.steps);
    }

    #[test]
    fn errors_carry_locations() {
        let e = parse_trace("drv 1 cnf.\nfun c () iota.\nstep 1 input [] {} | p(c) | .\n").unwrap_err();
        assert!(matches!(e, DrvError::Step { id: 1, .. }), "{e}");
        let e = parse_trace("drv 1 cnf.\nstep 1 input [] {} | | \n").unwrap_err();
        assert!(matches!(e, DrvError::Syntax { line: 2, .. }), "{e}");
        let e = parse_trace("drv 1 cnf.\nstep 2 input [1] {} | | .\n").unwrap_err();
        assert_eq!(e, DrvError::Step { id: 2, msg: "premise 1 does not precede this step".into() });
        let e = parse_trace("drv 1 cnf.\nfun c () iota.\nstep 1 input [] {} | = c c c | .\n").unwrap_err();
        assert!(matches!(e, DrvError::Syntax { line: 3, col: 28, .. }), "{e}");
    }

    #[test]
    fn empty_trace() {
        let t = parse_trace("drv 1 cnf.\n").unwrap();
        assert!(t.steps.is_empty());
    }
}

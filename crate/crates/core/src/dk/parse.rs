use super::{Document, Expr, Item, Section, SectionKind, HEADER_BANNER};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    Dot,
    Arrow,
    FatArrow,
    LongArrow,
    Define,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    /// Comment text, without delimiters and surrounding whitespace.
    Comment(String),
    Eof,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '!' | '?')
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self, n: usize) {
        for c in self.src[self.pos..self.pos + n].chars() {
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        self.pos += n;
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            let rest = &self.src[self.pos..];
            let Some(c) = rest.chars().next() else {
                out.push((Tok::Eof, self.line, self.col));
                return Ok(out);
            };
            if c.is_whitespace() {
                self.bump(c.len_utf8());
                continue;
            }
            let (line, col) = (self.line, self.col);
            if rest.starts_with("(;") {
                let Some(end) = rest.find(";)") else {
                    return Err(self.err("unterminated comment"));
                };
                let text = rest[2..end].trim().to_string();
                self.bump(end + 2);
                out.push((Tok::Comment(text), line, col));
                continue;
            }
            let fixed: &[(&str, Tok)] = &[
                ("-->", Tok::LongArrow),
                ("->", Tok::Arrow),
                ("=>", Tok::FatArrow),
                (":=", Tok::Define),
                (":", Tok::Colon),
                (".", Tok::Dot),
                ("(", Tok::LParen),
                (")", Tok::RParen),
                ("[", Tok::LBrack),
                ("]", Tok::RBrack),
                (",", Tok::Comma),
            ];
            if let Some((s, t)) = fixed.iter().find(|(s, _)| rest.starts_with(s)) {
                self.bump(s.len());
                out.push((t.clone(), line, col));
                continue;
            }
            let len: usize = rest.chars().take_while(|&c| ident_char(c)).map(char::len_utf8).sum();
            if len == 0 {
                return Err(self.err(format!("unexpected character {c:?}")));
            }
            out.push((Tok::Ident(rest[..len].to_string()), line, col));
            self.bump(len);
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    Lexer { src, pos: 0, line: 1, col: 1 }.tokens()
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.i + 1).min(self.toks.len() - 1)].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (_, line, col) = &self.toks[self.i];
        ParseError { line: *line, col: *col, msg: msg.into() }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.next();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}, found {:?}", self.peek())))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(x) if !is_keyword(&x) => {
                self.next();
                Ok(x)
            }
            t => Err(self.err(format!("expected identifier, found {t:?}"))),
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        if let (Tok::Ident(x), Tok::Colon) = (self.peek().clone(), self.peek2().clone()) {
            if !is_keyword(&x) {
                self.next();
                self.next();
                let dom = self.app()?;
                return match self.next() {
                    Tok::Arrow => Ok(Expr::pi(x, dom, self.term()?)),
                    Tok::FatArrow => Ok(Expr::lam(x, dom, self.term()?)),
                    _ => {
                        self.i -= 1;
                        Err(self.err("expected -> or => after binder"))
                    }
                };
            }
        }
        let a = self.app()?;
        if *self.peek() == Tok::Arrow {
            self.next();
            return Ok(Expr::arrow(a, self.term()?));
        }
        Ok(a)
    }

    fn app(&mut self) -> Result<Expr, ParseError> {
        let head = self.atom()?;
        let mut args = Vec::new();
        while matches!(self.peek(), Tok::LParen)
            || matches!(self.peek(), Tok::Ident(x) if !is_keyword(x) || x == "Type")
        {
            args.push(self.atom()?);
        }
        Ok(Expr::app(head, args))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Ident(x) if x == "Type" => {
                self.next();
                Ok(Expr::Type)
            }
            Tok::Ident(_) => Ok(Expr::Ident(self.ident()?)),
            Tok::LParen => {
                self.next();
                let t = self.term()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(t)
            }
            t => Err(self.err(format!("expected a term, found {t:?}"))),
        }
    }

    fn item(&mut self) -> Result<Item, ParseError> {
        match self.peek().clone() {
            Tok::LBrack => {
                self.next();
                let mut ctx = Vec::new();
                if *self.peek() != Tok::RBrack {
                    ctx.push(self.ident()?);
                    while *self.peek() == Tok::Comma {
                        self.next();
                        ctx.push(self.ident()?);
                    }
                }
                self.expect(Tok::RBrack, "']'")?;
                let lhs = self.term()?;
                self.expect(Tok::LongArrow, "'-->'")?;
                let rhs = self.term()?;
                self.expect(Tok::Dot, "'.'")?;
                Ok(Item::Rule { ctx, lhs, rhs })
            }
            Tok::Ident(k) if k == "def" || k == "thm" => {
                self.next();
                let name = self.ident()?;
                self.expect(Tok::Colon, "':'")?;
                let ty = self.term()?;
                match self.next() {
                    Tok::Dot => Ok(Item::Decl { name, ty, definable: true }),
                    Tok::Define => {
                        let body = self.term()?;
                        self.expect(Tok::Dot, "'.'")?;
                        Ok(Item::Def { name, ty, body })
                    }
                    _ => {
                        self.i -= 1;
                        Err(self.err("expected '.' or ':='"))
                    }
                }
            }
            _ => {
                let name = self.ident()?;
                self.expect(Tok::Colon, "':'")?;
                let ty = self.term()?;
                self.expect(Tok::Dot, "'.'")?;
                Ok(Item::Decl { name, ty, definable: false })
            }
        }
    }
}

fn is_keyword(x: &str) -> bool {
    matches!(x, "def" | "thm" | "Type")
}

/// Parses a script in the Dedukti subset emitted by this crate. Section
/// banners and `sorry:` comments are kept; other comments are dropped.
pub fn parse_document(src: &str) -> Result<Document, ParseError> {
    let mut p = Parser { toks: lex(src)?, i: 0 };
    let mut doc = Document { header: false, sections: Vec::new() };
    let mut first = true;
    loop {
        match p.peek().clone() {
            Tok::Eof => break,
            Tok::Comment(text) => {
                p.next();
                let full = format!("(; {text} ;)");
                if first && full == HEADER_BANNER {
                    doc.header = true;
                } else if let Some(k) = SectionKind::ALL.iter().find(|k| k.banner() == full) {
                    doc.sections.push(Section { kind: Some(*k), items: Vec::new() });
                } else if text.starts_with("sorry:") {
                    current(&mut doc).push(Item::Note(text));
                }
            }
            _ => {
                let item = p.item()?;
                current(&mut doc).push(item);
            }
        }
        first = false;
    }
    Ok(doc)
}

fn current(doc: &mut Document) -> &mut Vec<Item> {
    if doc.sections.is_empty() {
        doc.sections.push(Section { kind: None, items: Vec::new() });
    }
    &mut doc.sections.last_mut().unwrap().items
}

/// Parses a single term.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks: Vec<_> = lex(src)?.into_iter().filter(|(t, _, _)| !matches!(t, Tok::Comment(_))).collect();
    let mut p = Parser { toks, i: 0 };
    let e = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.err("trailing input after term"));
    }
    Ok(e)
}

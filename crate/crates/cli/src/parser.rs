//! Recursive-descent parser for the expression language.
//!
//! ```text
//! sum     := ["-"] product (("+" | "-") product)*
//! product := factor (["*"] factor)*
//! factor  := int ["/" int] | "j" ["^" int] | "eta"
//!          | ("x" | "dx" | "ddx" | "th" | "bth" | "delx" | "ddelx") "[" int "]"
//!          | ("d" | "conj") "(" sum ")" | "(" sum ")"
//!          | "[" row ("," row)* "]"          row := "[" sum ("," sum)* "]"
//!          | ["~"] ident ["[" int "]"] ["_" ("," int)+]
//! ```
//!
//! A symbol name ending in `inv` denotes the inverse of the stem.

use thiserror::Error;

use crate::ast::{Expr, GenKind, SymbolRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| ParseError {
                line: l0,
                col: c0,
                msg: format!("integer `{text}` is too large"),
            })?;
            Tok::Num(n)
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^~_,()[]".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError { line: l0, col: c0, msg: format!("unexpected character `{c}`") });
        };
        col += i - start;
        out.push(Token { tok, line: l0, col: c0 });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.sum()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => Err(p.error(format!("unexpected {}", describe(t)))),
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: String) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, col: t.col, msg }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", describe(self.peek()))))
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.next();
                Ok(n)
            }
            t => Err(self.error(format!("expected a number, found {}", describe(&t)))),
        }
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        self.expect('[')?;
        let n = self.number()?;
        if n == 0 {
            self.pos -= 1;
            return Err(self.error("indices start at 1".into()));
        }
        self.expect(']')?;
        Ok(n as usize)
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let neg = self.eat('-');
        terms.push((neg, self.product()?));
        loop {
            let neg = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                break;
            };
            terms.push((neg, self.product()?));
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(Expr::Sum(terms))
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::Sym('(' | '[' | '~'))
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut fs = vec![self.factor()?];
        loop {
            if self.eat('*') || self.starts_factor() {
                fs.push(self.factor()?);
            } else {
                break;
            }
        }
        if fs.len() == 1 {
            return Ok(fs.pop().expect("one factor"));
        }
        Ok(Expr::Product(fs))
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(p) => {
                self.next();
                if self.eat('/') {
                    let q = self.number()?;
                    if q == 0 {
                        self.pos -= 1;
                        return Err(self.error("zero denominator".into()));
                    }
                    return Ok(Expr::Rational(p, q));
                }
                Ok(Expr::Rational(p, 1))
            }
            Tok::Sym('(') => {
                self.next();
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => self.matrix(),
            Tok::Sym('~') => {
                self.next();
                match self.peek().clone() {
                    Tok::Ident(name) => {
                        self.next();
                        self.symbol(name, true)
                    }
                    t => Err(self.error(format!("expected a symbol after `~`, found {}", describe(&t)))),
                }
            }
            Tok::Ident(name) => {
                self.next();
                self.word(name)
            }
            t => Err(self.error(format!("unexpected {}", describe(&t)))),
        }
    }

    fn word(&mut self, name: String) -> Result<Expr, ParseError> {
        match name.as_str() {
            "j" => {
                if self.eat('^') {
                    let k = self.number()?;
                    return Ok(Expr::J(k as u32));
                }
                Ok(Expr::J(1))
            }
            "eta" => Ok(Expr::Eta),
            "d" | "conj" => {
                if *self.peek() != Tok::Sym('(') {
                    return Err(self.error(format!("`{name}` must be applied as `{name}(...)`")));
                }
                self.next();
                let inner = self.sum()?;
                self.expect(')')?;
                Ok(if name == "d" { Expr::D(Box::new(inner)) } else { Expr::Conj(Box::new(inner)) })
            }
            _ => match GenKind::from_keyword(&name) {
                Some(kind) => {
                    if *self.peek() != Tok::Sym('[') {
                        return Err(self.error(format!("`{name}` needs an index, as in `{name}[1]`")));
                    }
                    Ok(Expr::Gen(kind, self.index()?))
                }
                None => self.symbol(name, false),
            },
        }
    }

    fn symbol(&mut self, name: String, bar: bool) -> Result<Expr, ParseError> {
        let reserved = ["j", "eta", "d", "conj"];
        if reserved.contains(&name.as_str()) || GenKind::from_keyword(&name).is_some() {
            self.pos -= 1;
            return Err(self.error(format!("`{name}` is reserved")));
        }
        let (name, inverse) = match name.strip_suffix("inv") {
            Some(stem) if !stem.is_empty() => (stem.to_string(), true),
            _ => (name, false),
        };
        let index = if *self.peek() == Tok::Sym('[') { Some(self.index()?) } else { None };
        let mut derivs = Vec::new();
        if *self.peek() == Tok::Sym('_') && *self.peek_at(1) == Tok::Sym(',') {
            self.next();
            while self.eat(',') {
                let d = self.number()?;
                if d == 0 {
                    self.pos -= 1;
                    return Err(self.error("indices start at 1".into()));
                }
                derivs.push(d as usize);
            }
            if inverse {
                return Err(self.error("derivatives of an inverse are written through the symbol itself".into()));
            }
        } else if *self.peek() == Tok::Sym('_') {
            self.next();
            return Err(self.error("expected `,` after `_`".into()));
        }
        Ok(Expr::Symbol(SymbolRef { name, bar, inverse, index, derivs }))
    }

    fn matrix(&mut self) -> Result<Expr, ParseError> {
        self.expect('[')?;
        let mut rows = Vec::new();
        loop {
            self.expect('[')?;
            let mut row = vec![self.sum()?];
            while self.eat(',') {
                row.push(self.sum()?);
            }
            self.expect(']')?;
            rows.push(row);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        Ok(Expr::Matrix(rows))
    }
}

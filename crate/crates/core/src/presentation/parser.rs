//! Recursive-descent parser for the presentation DSL.
//!
//! ```text
//! file     := "gens" namelist ";" "rels" rellist ";"
//! rellist  := relchain ("," relchain)*
//! relchain := term ("=" term)+ | name ":=" atom
//! term     := factor+ | "1"
//! factor   := atom ("^" (int | atom))?
//! atom     := name | "[" term ("," term)+ "]" | "(" term ")" | name ":=" atom
//! ```
//!
//! `c := [a,b]` declares `c` as an extra generator with relator `c⁻¹[a,b]`.
//! `#` starts a comment that runs to the end of the line.

use super::{free_reduce, Presentation, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Identity,
    Name(String),
    Product(Vec<Expr>),
    Power(Box<Expr>, i64),
    Conjugate(Box<Expr>, Box<Expr>),
    /// Left-normed: `[x, y, z] = [[x, y], z]`.
    Commutator(Vec<Expr>),
    Define(String, Box<Expr>),
}

/// Names visible while expanding, plus the relators contributed by
/// abbreviations defined so far.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    pub names: Vec<String>,
    pub definitions: Vec<Word>,
}

impl Scope {
    pub fn new(names: Vec<String>) -> Self {
        Scope {
            names,
            definitions: Vec::new(),
        }
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Expands commutator, conjugation and power sugar into a flat word.
/// Definitions encountered add a generator and its defining relator to `scope`.
pub fn expand_word(expr: &Expr, scope: &mut Scope) -> Result<Word> {
    Ok(match expr {
        Expr::Identity => Word::identity(),
        Expr::Name(n) => match scope.lookup(n) {
            Some(i) => Word::generator(i),
            None => return Err(Error::UndefinedAbbreviation(n.clone())),
        },
        Expr::Product(fs) => {
            let mut w = Word::identity();
            for f in fs {
                w = w.concat(&expand_word(f, scope)?);
            }
            w
        }
        Expr::Power(base, n) => expand_word(base, scope)?.pow(*n),
        Expr::Conjugate(x, y) => {
            let x = expand_word(x, scope)?;
            let y = expand_word(y, scope)?;
            Word::conjugate(&x, &y)
        }
        Expr::Commutator(items) => {
            let mut acc = expand_word(&items[0], scope)?;
            for it in &items[1..] {
                let y = expand_word(it, scope)?;
                acc = Word::commutator(&acc, &y);
            }
            acc
        }
        Expr::Define(name, body) => {
            let body = expand_word(body, scope)?;
            if scope.lookup(name).is_some() {
                return Err(Error::Syntax {
                    line: 0,
                    column: 0,
                    message: format!("`{name}` is already defined"),
                });
            }
            scope.names.push(name.clone());
            let g = Word::generator(scope.names.len() - 1);
            scope.definitions.push(free_reduce(&g.inverse().concat(&body)));
            g
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Comma,
    Semi,
    Eq,
    Caret,
    Minus,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Define,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut push = |tok: Tok| {
            out.push(Token {
                tok,
                line: tl,
                column: tc,
            })
        };
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            ',' => push(Tok::Comma),
            ';' => push(Tok::Semi),
            '=' => push(Tok::Eq),
            '^' => push(Tok::Caret),
            '-' => push(Tok::Minus),
            '[' => push(Tok::LBracket),
            ']' => push(Tok::RBracket),
            '(' => push(Tok::LParen),
            ')' => push(Tok::RParen),
            ':' => {
                if chars.get(i + 1) == Some(&'=') {
                    push(Tok::Define);
                    i += 2;
                    col += 2;
                    continue;
                }
                return Err(syntax(tl, tc, "expected `:=`"));
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v: i64 = s
                    .parse()
                    .ok()
                    .filter(|v| *v <= i32::MAX as i64)
                    .ok_or_else(|| syntax(tl, tc, "integer literal too large"))?;
                push(Tok::Int(v));
                col += i - start;
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                push(Tok::Ident(chars[start..i].iter().collect()));
                col += i - start;
                continue;
            }
            other => return Err(syntax(tl, tc, &format!("unexpected character `{other}`"))),
        }
        i += 1;
        col += 1;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

fn syntax(line: usize, column: usize, message: &str) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    scope: Scope,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn err(&self, msg: &str) -> Error {
        let (l, c) = self.here();
        syntax(l, c, msg)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("expected {what}")))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.err(&format!("expected `{kw}`"))),
        }
    }

    fn name(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if s != "gens" && s != "rels" => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.err("expected a name")),
        }
    }

    fn file(&mut self) -> Result<Presentation> {
        self.keyword("gens")?;
        loop {
            let (l, c) = self.here();
            let n = self.name()?;
            if self.scope.names.contains(&n) {
                return Err(syntax(l, c, &format!("duplicate generator `{n}`")));
            }
            self.scope.names.push(n);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::Semi, "`;` after generator list")?;
        self.keyword("rels")?;
        let mut relators = Vec::new();
        loop {
            self.relchain(&mut relators)?;
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::Semi, "`;` after relations")?;
        if *self.peek() != Tok::Eof {
            return Err(self.err("unexpected input after `;`"));
        }
        // Defining relators go first so that abbreviations bind before use.
        let mut all = std::mem::take(&mut self.scope.definitions);
        all.extend(relators);
        Presentation::new(std::mem::take(&mut self.scope.names), all)
    }

    fn relchain(&mut self, relators: &mut Vec<Word>) -> Result<()> {
        let start = self.pos;
        let defined_before = self.scope.definitions.len();
        let first = self.term()?;
        let mut terms = vec![first];
        while *self.peek() == Tok::Eq {
            self.bump();
            terms.push(self.term()?);
        }
        if terms.len() == 1 {
            // A bare definition contributes only its defining relator.
            let is_definition = self.scope.definitions.len() > defined_before
                && matches!(&terms[0], Expr::Name(n) if self.scope.names.last() == Some(n));
            return match is_definition {
                true => Ok(()),
                false => {
                    let t = &self.toks[start];
                    Err(syntax(t.line, t.column, "relation needs `=`"))
                }
            };
        }
        let words = terms
            .iter()
            .map(|t| expand_word(t, &mut self.scope))
            .collect::<Result<Vec<_>>>()?;
        let rhs = words.last().unwrap().inverse();
        for lhs in &words[..words.len() - 1] {
            relators.push(free_reduce(&lhs.concat(&rhs)));
        }
        Ok(())
    }

    fn at_term_end(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Comma | Tok::Semi | Tok::Eq | Tok::RBracket | Tok::RParen | Tok::Eof
        )
    }

    fn term(&mut self) -> Result<Expr> {
        if let Tok::Int(v) = *self.peek() {
            if v != 1 {
                return Err(self.err("only `1` may stand as an integer term"));
            }
            self.bump();
            if !self.at_term_end() {
                return Err(self.err("`1` must stand alone"));
            }
            return Ok(Expr::Identity);
        }
        let mut factors = Vec::new();
        while !self.at_term_end() {
            factors.push(self.factor()?);
        }
        match factors.len() {
            0 => Err(self.err("expected a term")),
            1 => Ok(factors.pop().unwrap()),
            _ => Ok(Expr::Product(factors)),
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match *self.peek() {
            Tok::Int(v) => {
                if v == 0 {
                    return Err(self.err("zero exponent"));
                }
                self.bump();
                Ok(Expr::Power(Box::new(base), if negative { -v } else { v }))
            }
            _ if negative => Err(self.err("expected an integer after `-`")),
            _ => {
                let by = self.atom()?;
                Ok(Expr::Conjugate(Box::new(base), Box::new(by)))
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Ident(_) => {
                let (l, c) = self.here();
                let n = self.name()?;
                if *self.peek() == Tok::Define {
                    self.bump();
                    if self.scope.names.contains(&n) {
                        return Err(syntax(l, c, &format!("`{n}` is already defined")));
                    }
                    let body = self.atom()?;
                    // Expand now so the new name is in scope for what follows.
                    expand_word(&Expr::Define(n.clone(), Box::new(body)), &mut self.scope)?;
                    return Ok(Expr::Name(n));
                }
                if !self.scope.names.contains(&n) {
                    return Err(Error::UnknownGenerator {
                        name: n,
                        line: l,
                        column: c,
                    });
                }
                Ok(Expr::Name(n))
            }
            Tok::LBracket => {
                self.bump();
                let mut items = vec![self.term()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    items.push(self.term()?);
                }
                if items.len() < 2 {
                    return Err(self.err("commutator needs at least two entries"));
                }
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Expr::Commutator(items))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.err("expected a generator, `[` or `(`")),
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        scope: Scope::default(),
    };
    p.file()
}

/// Parses a single sugared word against an existing scope, e.g. `[a,b]^2`.
/// A defined name used later in an already-expanded word resolves to the
/// generator the definition introduced.
pub fn parse_expr(text: &str, names: &[String]) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        scope: Scope::new(names.to_vec()),
    };
    let e = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.err("unexpected input after word"));
    }
    Ok(e)
}

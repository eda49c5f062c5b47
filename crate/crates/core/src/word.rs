//! Word grammar.
//!
//! ```text
//! product := factor (('*' | '·')? factor)*
//! factor  := atom ('^' (int | atom))*          x^y = y⁻¹ x y, left-associative
//! atom    := NAME | '1' | '(' product ')' | '[' product ',' product ']'
//! ```
//!
//! `[x, y] = x⁻¹ y⁻¹ x y`. Juxtaposition is multiplication. An identifier that
//! is not a generator name but spells one single-letter generator per
//! character (`abab`) is read as that product.

use std::sync::Arc;

use crate::element::{invert_word, push_reduced, Element, Letter, Word};
use crate::error::{Error, Result};
use crate::group::GroupDef;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Identity,
    Name { name: String, column: usize },
    Product(Vec<Expr>),
    Power(Box<Expr>, i64),
    Conjugate(Box<Expr>, Box<Expr>),
    Commutator(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Caret,
    Minus,
    Times,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str, line: usize) -> Result<Lexer> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => toks.push((Tok::LParen, col)),
            ')' => toks.push((Tok::RParen, col)),
            '[' => toks.push((Tok::LBracket, col)),
            ']' => toks.push((Tok::RBracket, col)),
            ',' => toks.push((Tok::Comma, col)),
            '^' => toks.push((Tok::Caret, col)),
            '-' | '−' => toks.push((Tok::Minus, col)),
            '*' | '·' => toks.push((Tok::Times, col)),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s
                    .parse::<i64>()
                    .map_err(|_| Error::parse(line, col, format!("integer `{s}` out of range")))?;
                toks.push((Tok::Int(n), col));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            other => {
                return Err(Error::parse(
                    line,
                    col,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
        i += 1;
    }
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col(), msg)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) | Some(Tok::LBracket)
        )
    }

    fn product(&mut self) -> Result<Expr> {
        let mut factors = Vec::new();
        loop {
            if self.peek() == Some(&Tok::Times) {
                if factors.is_empty() {
                    return Err(self.err("multiplication sign without left operand"));
                }
                self.pos += 1;
                if !self.starts_atom() {
                    return Err(self.err("expected a factor after multiplication sign"));
                }
            }
            if !self.starts_atom() {
                break;
            }
            factors.push(self.factor()?);
        }
        match factors.len() {
            0 => Err(self.err("expected a word")),
            1 => Ok(factors.pop().unwrap()),
            _ => Ok(Expr::Product(factors)),
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Minus) => {
                    self.pos += 1;
                    match self.peek() {
                        Some(Tok::Int(n)) => {
                            let n = *n;
                            self.pos += 1;
                            base = Expr::Power(Box::new(base), -n);
                        }
                        _ => return Err(self.err("expected integer exponent after `^-`")),
                    }
                }
                Some(Tok::Int(n)) => {
                    let n = *n;
                    self.pos += 1;
                    base = Expr::Power(Box::new(base), n);
                }
                _ => {
                    let by = self.atom()?;
                    base = Expr::Conjugate(Box::new(base), Box::new(by));
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Name { name, column: col })
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(Expr::Identity)
            }
            Some(Tok::Int(n)) => Err(self.err(format!("`{n}` is not a word; only `1` is"))),
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.product()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let x = self.product()?;
                self.expect(Tok::Comma, "`,` in commutator")?;
                let y = self.product()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Expr::Commutator(Box::new(x), Box::new(y)))
            }
            _ => Err(self.err("expected a generator, `1`, `(` or `[`")),
        }
    }
}

/// Parses word text into an expression tree; `line` is used in error positions.
pub fn parse_expr_at(text: &str, line: usize) -> Result<Expr> {
    let lexer = lex(text, line)?;
    let mut p = Parser {
        toks: lexer.toks,
        pos: 0,
        line,
        end_col: text.chars().count() + 1,
    };
    let e = p.product()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    parse_expr_at(text, 1)
}

impl Expr {
    /// Expands the expression into a freely reduced word. `resolve` maps a
    /// name to its word, or `None` if the name is unknown.
    pub fn expand(&self, resolve: &dyn Fn(&str) -> Option<Word>) -> Result<Word> {
        Ok(match self {
            Expr::Identity => Vec::new(),
            Expr::Name { name, .. } => match resolve(name) {
                Some(w) => w,
                None => {
                    // single-letter juxtaposition, e.g. `abab`
                    let mut out = Vec::new();
                    for c in name.chars() {
                        let part = resolve(&c.to_string())
                            .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                        append(&mut out, &part);
                    }
                    out
                }
            },
            Expr::Product(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    append(&mut out, &f.expand(resolve)?);
                }
                out
            }
            Expr::Power(base, n) => {
                let w = base.expand(resolve)?;
                let w = if *n < 0 { invert_word(&w) } else { w };
                let mut out = Vec::new();
                for _ in 0..n.unsigned_abs() {
                    append(&mut out, &w);
                }
                out
            }
            Expr::Conjugate(x, y) => {
                let x = x.expand(resolve)?;
                let y = y.expand(resolve)?;
                let mut out = invert_word(&y);
                append(&mut out, &x);
                append(&mut out, &y);
                out
            }
            Expr::Commutator(x, y) => {
                let x = x.expand(resolve)?;
                let y = y.expand(resolve)?;
                let mut out = invert_word(&x);
                append(&mut out, &invert_word(&y));
                append(&mut out, &x);
                append(&mut out, &y);
                out
            }
        })
    }

    /// Every name occurring in the expression, in order of appearance.
    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Identity => {}
            Expr::Name { name, .. } => out.push(name),
            Expr::Product(fs) => fs.iter().for_each(|f| f.collect_names(out)),
            Expr::Power(b, _) => b.collect_names(out),
            Expr::Conjugate(x, y) | Expr::Commutator(x, y) => {
                x.collect_names(out);
                y.collect_names(out);
            }
        }
    }
}

fn append(out: &mut Word, w: &[Letter]) {
    for &l in w {
        push_reduced(out, l);
    }
}

pub(crate) fn generator_resolver(group: &GroupDef) -> impl Fn(&str) -> Option<Word> + '_ {
    move |name| group.state_index(name).map(|i| vec![Letter::new(i, false)])
}

/// Parses a word over the states of `group`.
pub fn parse_word(text: &str, group: &Arc<GroupDef>) -> Result<Element> {
    parse_word_at(text, 1, group)
}

pub fn parse_word_at(text: &str, line: usize, group: &Arc<GroupDef>) -> Result<Element> {
    let expr = parse_expr_at(text, line)?;
    let word = expr.expand(&generator_resolver(group))?;
    Ok(Element::from_reduced(group, word))
}

//! Text syntax for formulas: `!` negation, `&` meet, `|` join, parentheses.
//!
//! Precedence is `!` over `&` over `|`; binary operators associate to the
//! left. An atom is any run of characters other than whitespace, operators
//! and parentheses, so labels such as `Y+3/2` work unquoted.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use qprop_core::{Formula, Projector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected `{found}` at offset {offset}")]
    Unexpected { found: char, offset: usize },
    #[error("unexpected end of formula")]
    UnexpectedEnd,
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
}

/// Formula tree with unresolved atom labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Atom(String),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Labels in order of first appearance.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Atom(a) => {
                if !out.contains(&a.as_str()) {
                    out.push(a);
                }
            }
            Expr::Not(g) => g.collect(out),
            Expr::And(a, b) | Expr::Or(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    pub fn resolve(&self, atoms: &BTreeMap<String, Arc<Projector>>) -> Result<Formula, ParseError> {
        Ok(match self {
            Expr::Atom(a) => {
                let p = atoms
                    .get(a)
                    .ok_or_else(|| ParseError::UnknownAtom(a.clone()))?;
                Formula::atom(a.clone(), Arc::clone(p))
            }
            Expr::Not(g) => g.resolve(atoms)?.not(),
            Expr::And(a, b) => a.resolve(atoms)?.and(b.resolve(atoms)?),
            Expr::Or(a, b) => a.resolve(atoms)?.or(b.resolve(atoms)?),
        })
    }
}

pub fn is_atom_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '!' | '&' | '|' | '(' | ')')
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Atom(String),
    Op(char),
}

fn tokenize(text: &str) -> Vec<(usize, Token)> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_whitespace() {
            continue;
        }
        if !is_atom_char(c) {
            out.push((i, Token::Op(c)));
            continue;
        }
        let mut label = String::from(c);
        while let Some(&(_, d)) = chars.peek() {
            if !is_atom_char(d) {
                break;
            }
            label.push(d);
            chars.next();
        }
        out.push((i, Token::Atom(label)));
    }
    out
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some((_, Token::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.tokens.get(self.pos) {
            None => ParseError::UnexpectedEnd,
            Some((offset, tok)) => ParseError::Unexpected {
                found: match tok {
                    Token::Op(c) => *c,
                    Token::Atom(a) => a.chars().next().unwrap_or(' '),
                },
                offset: *offset,
            },
        }
    }

    fn binary(
        &mut self,
        op: char,
        next: fn(&mut Self) -> Result<Expr, ParseError>,
        build: fn(Box<Expr>, Box<Expr>) -> Expr,
    ) -> Result<Expr, ParseError> {
        let mut lhs = next(self)?;
        while self.peek_op() == Some(op) {
            self.pos += 1;
            lhs = build(Box::new(lhs), Box::new(next(self)?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr, ParseError> {
        self.binary('|', Self::and, Expr::Or)
    }

    fn and(&mut self) -> Result<Expr, ParseError> {
        self.binary('&', Self::unary, Expr::And)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.tokens.get(self.pos) {
            Some((_, Token::Op('!'))) => {
                self.pos += 1;
                Ok(Expr::Not(Box::new(self.unary()?)))
            }
            Some((_, Token::Op('('))) => {
                self.pos += 1;
                let inner = self.or()?;
                if self.peek_op() != Some(')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some((_, Token::Atom(a))) => {
                let a = a.clone();
                self.pos += 1;
                Ok(Expr::Atom(a))
            }
            _ => Err(self.unexpected()),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        tokens: tokenize(text),
        pos: 0,
    };
    let expr = p.or()?;
    if p.pos < p.tokens.len() {
        return Err(p.unexpected());
    }
    Ok(expr)
}

/// Parses and resolves atoms against `atoms` in one step.
pub fn parse_formula(
    text: &str,
    atoms: &BTreeMap<String, Arc<Projector>>,
) -> Result<Formula, ParseError> {
    parse(text)?.resolve(atoms)
}

//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := base ('^' nat)?
//! base    := variable | literal | '(' expr ')' | '-' base
//! literal := nat ('/' nat)?        fraction form only over Q
//! ```
//!
//! Multiplication is always explicit (`2x` is a syntax error) and `/` is only
//! legal between two integer literals over Q. Unary minus binds to a base, so
//! `-x^2` is `(-x)^2`; the canonical printer accounts for this.

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::Field;

use super::{Polynomial, PolyError, VarSet, MAX_EXPONENT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable {name:?} at byte {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("'/' at byte {pos}: division is only allowed inside rational number literals")]
    DivisionInExpression { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((start, Tok::Nat(input[start..i].to_string())));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(input[start..i].to_string())));
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    field: Field,
    vars: &'a VarSet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.i).cloned();
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn syntax(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos, msg: msg.into() }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.advance();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.advance();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    let pos = self.pos();
                    self.advance();
                    let f = self.factor()?;
                    acc = acc
                        .try_mul(&f)
                        .map_err(|_| self.syntax(pos, "monomial degree overflow"))?;
                }
                Some(Tok::Slash) => {
                    return Err(ParseError::DivisionInExpression { pos: self.pos() })
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            let caret_pos = self.pos();
            self.advance();
            let (pos, tok) = self
                .advance()
                .ok_or_else(|| self.syntax(self.end, "expected an exponent after '^'"))?;
            let digits = match tok {
                Tok::Nat(d) => d,
                _ => return Err(self.syntax(pos, "expected an exponent after '^'")),
            };
            let e: u64 = digits
                .parse()
                .map_err(|_| self.syntax(pos, "exponent exceeds 2^31 - 1"))?;
            if e > MAX_EXPONENT as u64 {
                return Err(self.syntax(pos, "exponent exceeds 2^31 - 1"));
            }
            return base.try_pow(e as u32).map_err(|err| match err {
                PolyError::DegreeOverflow => self.syntax(caret_pos, "monomial degree overflow"),
                other => self.syntax(caret_pos, other.to_string()),
            });
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let pos = self.pos();
        match self.advance() {
            Some((_, Tok::Ident(name))) => match self.vars.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.field, self.vars, i).unwrap()),
                None => Err(ParseError::UnknownVariable { pos, name }),
            },
            Some((_, Tok::Nat(digits))) => self.literal(pos, &digits),
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.advance() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some((p, _)) => Err(self.syntax(p, "expected ')'")),
                    None => Err(self.syntax(self.end, "expected ')'")),
                }
            }
            Some((_, Tok::Minus)) => Ok(self.base()?.neg()),
            Some((p, _)) => Err(self.syntax(p, "expected a variable, number, '(' or '-'")),
            None => Err(self.syntax(self.end, "expected a variable, number, '(' or '-'")),
        }
    }

    fn literal(&mut self, pos: usize, digits: &str) -> Result<Polynomial, ParseError> {
        let num: BigInt = digits
            .parse()
            .map_err(|_| self.syntax(pos, "bad integer literal"))?;
        if let Some(Tok::Slash) = self.peek() {
            let slash_pos = self.pos();
            if self.field.is_prime_field() {
                return Err(ParseError::DivisionInExpression { pos: slash_pos });
            }
            self.advance();
            let (dpos, tok) = self
                .advance()
                .ok_or_else(|| self.syntax(self.end, "expected a denominator after '/'"))?;
            let den_digits = match tok {
                Tok::Nat(d) => d,
                _ => return Err(self.syntax(dpos, "expected a denominator after '/'")),
            };
            let den: BigInt = den_digits
                .parse()
                .map_err(|_| self.syntax(dpos, "bad integer literal"))?;
            let c = self
                .field
                .from_ratio(&num, &den)
                .map_err(|_| self.syntax(dpos, "zero denominator in literal"))?;
            return Ok(Polynomial::constant(c, self.vars));
        }
        Ok(Polynomial::constant(self.field.from_bigint(&num), self.vars))
    }
}

/// Parses an expression into a polynomial over `field` in `vars`.
pub fn parse_poly(input: &str, field: Field, vars: &VarSet) -> Result<Polynomial, ParseError> {
    let toks = tokenize(input)?;
    let mut p = Parser { toks, i: 0, end: input.len(), field, vars };
    let poly = p.expr()?;
    if p.i < p.toks.len() {
        let pos = p.pos();
        let msg = match p.peek() {
            Some(Tok::Ident(_)) | Some(Tok::Nat(_)) | Some(Tok::LParen) => {
                "implicit multiplication is not allowed (write '*')"
            }
            _ => "unexpected trailing input",
        };
        return Err(p.syntax(pos, msg));
    }
    Ok(poly)
}

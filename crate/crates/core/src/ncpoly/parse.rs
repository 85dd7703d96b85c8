//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := ("+" | "-") factor | atom
//! atom   := integer ["/" integer] | "X" integer | "(" expr ")"
//! ```
//!
//! Multiplication must be written explicitly; `X12` is the variable with index 12.

use num_bigint::BigInt;

use super::{NcPolynomial, Word};
use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(u32),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    End,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].parse().expect("digits"))));
                continue;
            }
            b'X' | b'x' => {
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits == i {
                    return Err(syntax(start, "expected a variable index after 'X'"));
                }
                let idx: u32 = src[digits..i]
                    .parse()
                    .map_err(|_| syntax(digits, "variable index out of range"))?;
                if idx == 0 {
                    return Err(syntax(digits, "variable indices start at 1"));
                }
                out.push((start, Tok::Var(idx)));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character {ch:?}")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<NcPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.add(&self.term()?.scale(&Rational::from_integer(-1)));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NcPolynomial> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        match self.peek() {
            Tok::Var(_) | Tok::Int(_) | Tok::LParen => {
                Err(syntax(self.pos(), "implicit multiplication is not allowed; use '*'"))
            }
            _ => Ok(acc),
        }
    }

    fn factor(&mut self) -> Result<NcPolynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.factor()?.scale(&Rational::from_integer(-1)))
            }
            Tok::Plus => {
                self.bump();
                self.factor()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<NcPolynomial> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    let Tok::Int(d) = self.bump() else {
                        return Err(syntax(dpos, "expected an integer denominator"));
                    };
                    let c = Rational::from_bigints(n, d).map_err(|_| syntax(dpos, "zero denominator"))?;
                    Ok(NcPolynomial::constant(c))
                } else {
                    Ok(NcPolynomial::constant(Rational::from_bigint(n)))
                }
            }
            Tok::Var(v) => Ok(NcPolynomial::monomial(Word(vec![v]), Rational::one())),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.pos();
                if self.bump() != Tok::RParen {
                    return Err(syntax(close, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            t => Err(syntax(pos, format!("unexpected {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::Int(_) => "number",
        Tok::Var(_) => "variable",
        Tok::End => "end of input",
    }
}

/// Parses an expression; the result may be the zero polynomial.
pub(super) fn parse_expression(src: &str) -> Result<NcPolynomial> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), format!("unexpected {}", describe(p.peek()))));
    }
    Ok(e)
}

//! A small parser for non-commutative polynomial expressions such as
//! `13/5 A^5 + 4 (A (C-A))^2 (B-A)`.
//!
//! Upper-case letters `A, B, C, …` stand for `B_1, B_2, B_3, …`. Juxtaposition
//! is the (graded) product, `^n` a power, and a leading rational is the
//! coefficient of a term.

use num::BigInt;

use crate::algebra::{FormPolynomial, Rational};
use crate::error::{Error, Result};
use crate::trace::TracePolynomial;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<FormPolynomial> {
        let mut acc = FormPolynomial::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if negative { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FormPolynomial> {
        let mut coeff: Option<Rational> = None;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let n = self.number()?;
            let d = if self.peek() == Some(b'/') {
                self.pos += 1;
                self.number()?
            } else {
                BigInt::from(1)
            };
            if d == BigInt::from(0) {
                return self.err("zero denominator");
            }
            coeff = Some(Rational::new(n, d));
        }
        let mut acc = FormPolynomial::one();
        let mut factors = 0;
        while let Some(c) = self.peek() {
            if c == b'*' {
                self.pos += 1;
                continue;
            }
            if !(c == b'(' || c.is_ascii_uppercase()) {
                break;
            }
            let f = self.factor()?;
            acc = acc.mul(&f);
            factors += 1;
        }
        if factors == 0 && coeff.is_none() {
            return self.err("expected a term");
        }
        Ok(match coeff {
            Some(c) => acc.scale(&c),
            None => acc,
        })
    }

    fn factor(&mut self) -> Result<FormPolynomial> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                e
            }
            Some(c) if c.is_ascii_uppercase() => {
                self.pos += 1;
                FormPolynomial::omega(u32::from(c - b'A') + 1)
            }
            _ => return self.err("expected a letter or '('"),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.number()?;
            let n: u32 = n.try_into().map_err(|_| Error::Parse { pos: self.pos, msg: "exponent too large".into() })?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }
}

/// Parse an expression into a word polynomial.
pub fn parse_expr(src: &str) -> Result<FormPolynomial> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse an expression and take its trace.
pub fn trace_expr(src: &str) -> Result<TracePolynomial> {
    parse_expr(src).map(|f| TracePolynomial::trace(&f))
}

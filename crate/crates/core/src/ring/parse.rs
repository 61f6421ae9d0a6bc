//! Parser for the polynomial text format.
//!
//! Accepts the canonical rendering (`3/2*x^2*y - x + 1`) and, more generally,
//! sums, products, parentheses, unary minus, integer powers and division by
//! non-zero constants.

use std::sync::Arc;

use num_bigint::BigInt;

use super::polynomial::Rational;
use super::{Polynomial, RingContext};
use crate::error::{Error, Result};

struct Parser<'a> {
    ctx: &'a Arc<RingContext>,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        self.pos = at;
                        return self.err("division only by non-zero constants");
                    }
                    acc = acc.scale(&d.constant_coefficient().recip());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected a non-negative integer exponent");
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let Ok(e) = text.parse::<u32>() else {
                return self.err("exponent too large");
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = text.parse().expect("digits");
                Ok(Polynomial::constant(self.ctx, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric()
                        || self.src[self.pos] == b'_'
                        || self.src[self.pos] == b'\'')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ctx.variable_index(name) {
                    Some(i) => Ok(Polynomial::variable(self.ctx, i)),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable `{name}`"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a polynomial in the given ring.
pub fn parse_polynomial(ctx: &Arc<RingContext>, text: &str) -> Result<Polynomial> {
    let mut p = Parser { ctx, src: text.as_bytes(), pos: 0 };
    let value = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(value)
}

/// Parse a comma separated list of polynomials; an empty string yields an empty list.
pub fn parse_polynomial_list(ctx: &Arc<RingContext>, text: &str) -> Result<Vec<Polynomial>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(parse_offset(ctx, &text[start..i], start)?);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(parse_offset(ctx, &text[start..], start)?);
    Ok(out)
}

fn parse_offset(ctx: &Arc<RingContext>, text: &str, offset: usize) -> Result<Polynomial> {
    parse_polynomial(ctx, text).map_err(|e| match e {
        Error::Parse { position, message } => Error::Parse { position: position + offset, message },
        other => other,
    })
}

impl Polynomial {
    pub fn parse(ctx: &Arc<RingContext>, text: &str) -> Result<Polynomial> {
        parse_polynomial(ctx, text)
    }
}

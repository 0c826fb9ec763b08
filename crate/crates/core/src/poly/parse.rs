//! Recursive-descent parser for polynomial text.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := power ("*" power)*
//! power  := atom ("^" integer)?
//! atom   := number ["/" number] | "[" list "]" | "x" index | "(" expr ")" | "-" atom
//! ```

use num_bigint::BigInt;

use super::Poly;
use crate::error::{Error, Result};
use crate::ring::Ring;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
    nvars: usize,
}

pub fn parse(text: &str, ring: &Ring, nvars: usize) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
        nvars,
    };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.error("empty polynomial"));
    }
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(f)
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let pos = self.pos;
            let e: u32 = self
                .digits()?
                .parse()
                .map_err(|_| Error::Parse { pos, msg: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let start = self.pos;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.atom()?.neg())
            }
            Some(b'(') => {
                self.pos += 1;
                let f = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(f)
            }
            Some(b'x') => {
                self.pos += 1;
                let pos = self.pos;
                let idx: usize = self.digits()?.parse().map_err(|_| Error::Parse {
                    pos,
                    msg: "bad variable index".into(),
                })?;
                if idx == 0 || idx > self.nvars {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("variable x{idx} outside x1..x{}", self.nvars),
                    });
                }
                Ok(Poly::var(self.ring, self.nvars, idx - 1))
            }
            Some(b'[') => {
                let close = self.src[self.pos..]
                    .iter()
                    .position(|&c| c == b']')
                    .ok_or_else(|| self.error("unterminated '['"))?;
                let lit = std::str::from_utf8(&self.src[self.pos..=self.pos + close]).unwrap();
                let c = self.ring.parse_elem(lit).map_err(|e| Error::Parse {
                    pos: start,
                    msg: e.to_string(),
                })?;
                self.pos += close + 1;
                Ok(Poly::constant(self.ring, self.nvars, c))
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits()?.parse().unwrap();
                let c = if self.eat(b'/') {
                    let den: BigInt = self.digits()?.parse().unwrap();
                    self.ring.from_ratio(&num, &den).map_err(|e| Error::Parse {
                        pos: start,
                        msg: e.to_string(),
                    })?
                } else {
                    self.ring.from_bigint(&num)
                };
                Ok(Poly::constant(self.ring, self.nvars, c))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

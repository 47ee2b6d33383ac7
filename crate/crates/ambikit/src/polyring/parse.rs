//! Canonical text form: printing and parsing.
//!
//! Terms are printed descending under grevlex; coefficients as `a` or `a/b`
//! with `/1` suppressed; powers with `^`; `*` between factors.  Example:
//! `s11*s22 - s12^2`.  Parsing accepts the printed form (plus redundant
//! whitespace and repeated numeric factors) and round-trips printing
//! bit-exactly.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::{Monomial, PolyError, Polynomial, VarTable};

fn write_rational(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write_rational(f, &mag)?;
            } else {
                if !mag.is_one() {
                    write_rational(f, &mag)?;
                    write!(f, "*")?;
                }
                let mut first = true;
                for (i, &e) in m.exps().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write!(f, "{}", self.vars().name(i))?;
                    if e > 1 {
                        write!(f, "^{}", e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a digit");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn ident(&mut self) -> Result<String, PolyError> {
        let start = self.pos;
        if !matches!(self.peek(), Some(b) if b.is_ascii_alphabetic() || b == b'_') {
            return self.err("expected an identifier");
        }
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_string())
    }

    /// One multiplicative factor: a rational number or `var[^exp]`.
    /// Returns either a coefficient contribution or a monomial contribution.
    fn factor(&mut self, vars: &Arc<VarTable>) -> Result<(BigRational, Vec<u32>), PolyError> {
        let mut exps = vec![0u32; vars.len()];
        if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            let n = self.integer()?;
            self.skip_ws();
            let c = if self.eat(b'/') {
                self.skip_ws();
                let d = self.integer()?;
                if d.is_zero() {
                    return self.err("zero denominator in coefficient");
                }
                BigRational::new(n, d)
            } else {
                BigRational::from_integer(n)
            };
            return Ok((c, exps));
        }
        let name = self.ident()?;
        let idx = match vars.index_of(&name) {
            Some(i) => i,
            None => return Err(PolyError::UnknownVariable(name)),
        };
        let mut e = 1u32;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let n = self.integer()?;
            e = match n.to_string().parse::<u32>() {
                Ok(v) => v,
                Err(_) => return self.err("exponent out of range"),
            };
        }
        exps[idx] = exps[idx].saturating_add(e);
        Ok((BigRational::one(), exps))
    }

    fn term(&mut self, vars: &Arc<VarTable>) -> Result<(Monomial, BigRational), PolyError> {
        let mut coef = BigRational::one();
        let mut exps = vec![0u32; vars.len()];
        loop {
            self.skip_ws();
            let (c, e) = self.factor(vars)?;
            coef *= c;
            for (a, b) in exps.iter_mut().zip(e.iter()) {
                *a += b;
            }
            self.skip_ws();
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((Monomial::from_exps(exps), coef))
    }
}

impl Polynomial {
    /// Parses the canonical text form over the given table.
    pub fn parse(vars: &Arc<VarTable>, input: &str) -> Result<Polynomial, PolyError> {
        let mut p = Parser {
            bytes: input.as_bytes(),
            pos: 0,
        };
        let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
        p.skip_ws();
        if p.peek().is_none() {
            return p.err("empty input");
        }
        let mut sign = BigRational::one();
        if p.eat(b'-') {
            sign = -sign;
        } else {
            let _ = p.eat(b'+');
        }
        loop {
            let (m, c) = p.term(vars)?;
            terms.push((m, c * &sign));
            p.skip_ws();
            match p.peek() {
                None => break,
                Some(b'+') => {
                    p.pos += 1;
                    sign = BigRational::one();
                }
                Some(b'-') => {
                    p.pos += 1;
                    sign = -BigRational::one();
                }
                Some(_) => return p.err("expected `+`, `-`, or end of input"),
            }
        }
        Ok(Polynomial::from_terms(vars, terms))
    }
}

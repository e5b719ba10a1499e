//! Polynomial expressions in `x` with integer coefficients.
//!
//! ```text
//! expr   = term { ("+" | "-") term }
//! term   = factor { ["*"] factor }
//! factor = ("-" | "+") factor | atom [ "^" integer ]
//! atom   = integer | "x" | "(" expr ")"
//! ```

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed polynomial at column {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

type Poly = Vec<BigInt>;

fn trim(mut f: Poly) -> Poly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn add(a: &Poly, b: &Poly, sign: i32) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        if sign < 0 {
            out[i] -= c;
        } else {
            out[i] += c;
        }
    }
    trim(out)
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos + 1, msg: msg.into() })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.peek();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = add(&acc, &self.term()?, 1);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = add(&acc, &self.term()?, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = mul(&acc, &self.factor()?);
                }
                Some(c) if c == b'x' || c == b'(' || c.is_ascii_digit() => {
                    acc = mul(&acc, &self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(add(&Vec::new(), &self.factor()?, -1))
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() != Some(b'^') {
                    return Ok(base);
                }
                self.pos += 1;
                let e = self.integer()?;
                let Some(e) = e.to_u64().filter(|&e| e <= MAX_EXPONENT) else {
                    return self.err("exponent too large");
                };
                let mut out = vec![BigInt::from(1)];
                for _ in 0..e {
                    out = mul(&out, &base);
                }
                Ok(out)
            }
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(vec![BigInt::zero(), BigInt::from(1)])
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(trim(vec![self.integer()?])),
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Integer coefficients of `s`, ascending, with trailing zeros removed.
pub fn parse(s: &str) -> Result<Vec<BigInt>, ParseError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Coefficients reduced into `[0, p)`.
pub fn parse_mod(s: &str, p: u64) -> Result<Vec<u64>, ParseError> {
    let m = BigInt::from(p);
    let mut out: Vec<u64> = parse(s)?.iter().map(|c| ((c % &m + &m) % &m).to_u64().expect("reduced")).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn basic() {
        assert_eq!(parse("x^3-x").unwrap(), ints(&[0, -1, 0, 1]));
        assert_eq!(parse("-(x^3 - x)^2").unwrap(), ints(&[0, 0, -1, 0, 2, 0, -1]));
        assert_eq!(parse("2x^2 + 3*x + 1").unwrap(), ints(&[1, 3, 2]));
        assert_eq!(parse("(x+1)(x-1)").unwrap(), ints(&[-1, 0, 1]));
        assert_eq!(parse("x - x").unwrap(), ints(&[]));
    }

    #[test]
    fn modular() {
        assert_eq!(parse_mod("x^3-x", 7).unwrap(), [0, 6, 0, 1]);
        assert_eq!(parse_mod("2x^2 + 2", 2).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn errors() {
        assert_eq!(parse("x^").unwrap_err().pos, 3);
        assert!(parse("x + y").is_err());
        assert!(parse("(x + 1").is_err());
        assert!(parse("x 1)").is_err());
    }
}

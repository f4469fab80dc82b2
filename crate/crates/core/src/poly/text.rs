//! Canonical text form of [`MPoly`].
//!
//! ```text
//! poly    := "0" | ["-"] term { ("+" | "-") term }
//! term    := factor { "*" factor }
//! factor  := rational | symbol [ "^" uint ] | "(" poly ")" [ "^" uint ]
//! rational:= uint [ "/" uint ]
//! symbol  := "f" uint "_" index          coefficient, e.g. f1_112 or f1_2.10
//!          | "A" uint "_" uint           matrix entry, e.g. A1_2
//!          | "t" uint { "_" uint }       Schur argument, e.g. t3 or t2_1
//! index   := digit { digit }             one index per digit
//!          | uint "." uint { "." uint }  used when some index exceeds 9
//! ```
//!
//! Printing emits terms in canonical order, omits unit coefficients, writes
//! the coefficient first (`1/6*t1^3`) and separates terms with ` + ` / ` - `.
//! The parser accepts arbitrary whitespace, any term order and parentheses;
//! the printer never emits parentheses.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::monomial::Monomial;
use super::mpoly::MPoly;
use super::symbol::Symbol;
use super::Rational;
use crate::error::{Error, Result};

pub(crate) fn fmt_rational(c: &Rational, f: &mut impl fmt::Write) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

pub fn rational_to_string(c: &Rational) -> String {
    let mut s = String::new();
    fmt_rational(c, &mut s).expect("writing to a String cannot fail");
    s
}

/// Parses `p`, `-p` or `p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let p: MPoly = s.parse()?;
    p.as_constant()
        .ok_or_else(|| Error::invalid(format!("`{s}` is not a rational constant")))
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.canonical_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (pos, (factors, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            match (pos, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if factors.is_empty() {
                fmt_rational(&abs, f)?;
                continue;
            }
            if !abs.is_one() {
                fmt_rational(&abs, f)?;
                f.write_str("*")?;
            }
            for (i, (s, e)) in factors.iter().enumerate() {
                if i > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{s}")?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for MPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser { src: s.as_bytes(), pos: 0 };
        let p = parser.poly()?;
        match parser.peek() {
            None => Ok(p),
            Some(c) => parser.err(format!("unexpected `{}`", c as char)),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn uint(&mut self) -> Result<u32> {
        let pos = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| Error::Parse { pos, msg: format!("integer `{d}` out of range") })
    }

    fn expect_raw(&mut self, c: u8) -> Result<()> {
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn poly(&mut self) -> Result<MPoly> {
        let mut out = MPoly::zero();
        let mut negative = self.eat(b'-');
        if !negative {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            if negative {
                out -= &t;
            } else {
                out += &t;
            }
            match self.peek() {
                None | Some(b')') => break,
                Some(b'+') => {
                    self.pos += 1;
                    negative = self.eat(b'-');
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = !self.eat(b'-');
                }
                Some(c) => return self.err(format!("unexpected `{}`", c as char)),
            }
        }
        Ok(out)
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat(b'^') {
            self.skip_ws();
            self.uint()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        let mut groups = Vec::new();
        loop {
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.poly()?;
                    if !self.eat(b')') {
                        return self.err("expected `)`");
                    }
                    let e = self.exponent()?;
                    groups.push(inner.pow(e));
                }
                Some(c) if c.is_ascii_digit() => {
                    let num = BigInt::from_str(self.digits()?).expect("digits");
                    let mut q = Rational::from_integer(num);
                    if self.eat(b'/') {
                        self.skip_ws();
                        let den = BigInt::from_str(self.digits()?).expect("digits");
                        if den == BigInt::from(0) {
                            return self.err("zero denominator");
                        }
                        q /= Rational::from_integer(den);
                    }
                    coeff *= q;
                }
                Some(_) => {
                    let s = self.symbol()?;
                    let e = self.exponent()?;
                    factors.push((s.id(), e));
                }
                None => return self.err("expected a factor"),
            }
            if !self.eat(b'*') {
                break;
            }
        }
        let mut out = MPoly::term(Monomial::from_factors(factors), coeff);
        for g in &groups {
            out = &out * g;
        }
        Ok(out)
    }

    fn symbol(&mut self) -> Result<Symbol> {
        self.skip_ws();
        let head = self.src.get(self.pos).copied();
        self.pos += 1;
        match head {
            Some(b'f') => {
                let poly = self.uint()?;
                self.expect_raw(b'_')?;
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let raw = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let index: Vec<u32> = if raw.contains('.') {
                    raw.split('.')
                        .map(|p| p.parse::<u32>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| Error::Parse { pos: start, msg: format!("bad index `{raw}`") })?
                } else {
                    raw.bytes().map(|b| u32::from(b - b'0')).collect()
                };
                if index.is_empty() {
                    return self.err("empty coefficient index");
                }
                Symbol::coeff(poly, &index).map_err(|e| Error::Parse { pos: start, msg: e.to_string() })
            }
            Some(b'A') => {
                let row = self.uint()?;
                self.expect_raw(b'_')?;
                let col = self.uint()?;
                if row == 0 || col == 0 {
                    return self.err("matrix indices are 1-based");
                }
                Ok(Symbol::matrix(row, col))
            }
            Some(b't') => {
                let mut g = vec![self.uint()?];
                while self.src.get(self.pos) == Some(&b'_') {
                    self.pos += 1;
                    g.push(self.uint()?);
                }
                Ok(Symbol::t(&g))
            }
            _ => {
                self.pos -= 1;
                self.err("expected a symbol (f.., A.., t..) or a number")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn prints_canonically() {
        let p: MPoly = "1/6*t1^3 + t1*t2 + t3".parse().unwrap();
        assert_eq!(p.to_string(), "t3 + t1*t2 + 1/6*t1^3");
        let d: MPoly = "-f1_2*f2_1 + f2_2*f1_1".parse().unwrap();
        assert_eq!(d.to_string(), "f1_1*f2_2 - f1_2*f2_1");
        assert_eq!(MPoly::zero().to_string(), "0");
        assert_eq!("-3/4".parse::<MPoly>().unwrap().to_string(), "-3/4");
        assert_eq!("2 - 2".parse::<MPoly>().unwrap().to_string(), "0");
    }

    #[test]
    fn parses_signs_and_products() {
        let p: MPoly = " - 2 * A1_1 ^ 2 + -A1_2 - -A2_1".parse().unwrap();
        assert_eq!(p.to_string(), "-A1_2 + A2_1 - 2*A1_1^2");
        let q: MPoly = "3*f1_12*2/3".parse().unwrap();
        assert_eq!(q.to_string(), "2*f1_12");
        assert_eq!(parse_rational("-7/21").unwrap(), rat(-1, 3));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "+", "x1", "f1_", "A0_1", "1/0", "t", "A1_1 +", "f1_1 f1_2"] {
            assert!(bad.parse::<MPoly>().is_err(), "accepted `{bad}`");
        }
        assert!(parse_rational("f1_1").is_err());
    }

    #[test]
    fn parentheses_expand() {
        let p: MPoly = "1/2*(t1^2 - t2) - (t1 + t2)^2 + 2*(-t3)".parse().unwrap();
        assert_eq!(p.to_string(), "-1/2*t2 - 2*t3 - 1/2*t1^2 - 2*t1*t2 - t2^2");
        assert!("(t1".parse::<MPoly>().is_err());
        assert!("t1)".parse::<MPoly>().is_err());
    }

    #[test]
    fn wide_indices_round_trip() {
        let p: MPoly = "f3_2.11 + t10_0_2".parse().unwrap();
        let s = p.to_string();
        assert_eq!(s, "f3_2.11 + t10_0_2");
        assert_eq!(s.parse::<MPoly>().unwrap(), p);
    }
}

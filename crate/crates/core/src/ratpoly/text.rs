//! Text syntax: `3/4*X0^2*X1 - 2*X1 + 1`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' natural)?
//! atom   := natural | ident | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{fmt_rational, RatPoly, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(src[start..i].parse().unwrap())));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Parse { pos: start, msg: format!("unexpected character `{other}`") })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<RatPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.unary()?;
                    match d.constant_value() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        Some(_) => return Err(Error::Parse { pos: at, msg: "division by zero".into() }),
                        None => {
                            return Err(Error::Parse { pos: at, msg: "division by a non-constant".into() })
                        }
                    }
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    let k: u32 = match u32::try_from(&k) {
                        Ok(k) => k,
                        Err(_) => return self.err("exponent too large"),
                    };
                    self.pos += 1;
                    Ok(base.pow(k))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatPoly::constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(RatPoly::var(&name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses the text syntax into a canonical polynomial.
pub fn parse(src: &str) -> Result<RatPoly> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty input".into() });
    }
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

impl RatPoly {
    /// Terms in print order: total degree descending, then exponents descending.
    pub fn sorted_terms(&self) -> Vec<(&[u32], &Rational)> {
        let mut ts: Vec<(&[u32], &Rational)> = self.terms().collect();
        ts.sort_by(|(a, _), (b, _)| {
            let da: u64 = a.iter().map(|&k| k as u64).sum();
            let db: u64 = b.iter().map(|&k| k as u64).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        ts
    }
}

fn monomial_text(vars: &[String], e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (v, &k) in vars.iter().zip(e) {
        match k {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{k}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = monomial_text(&self.vars, e);
            if mono.is_empty() {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&mag), mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{rat, ratio};

    #[test]
    fn spec_example() {
        let p = parse("3/4*X0^2*X1 - 2*X1 + 1").unwrap();
        assert_eq!(p.to_string(), "3/4*X0^2*X1 - 2*X1 + 1");
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn implicit_multiplication_and_parentheses() {
        assert_eq!(parse("2t").unwrap(), parse("2*t").unwrap());
        assert_eq!(parse("X0(X0+1)").unwrap(), parse("X0^2 + X0").unwrap());
        assert_eq!(parse("(t+1)(t-1)").unwrap(), parse("t^2-1").unwrap());
    }

    #[test]
    fn unary_minus_binds_below_power() {
        assert_eq!(parse("-X0^2").unwrap(), -RatPoly::var("X0").pow(2));
        assert_eq!(parse("--3").unwrap(), RatPoly::from_int(3));
    }

    #[test]
    fn rational_coefficients() {
        assert_eq!(parse("1/2").unwrap().constant_value(), Some(ratio(1, 2)));
        assert_eq!(parse("-X1/2").unwrap(), RatPoly::var("X1").scale(&ratio(-1, 2)));
        assert_eq!(parse("6/4").unwrap().constant_value(), Some(ratio(3, 2)));
        assert_eq!(parse("0").unwrap().to_string(), "0");
        assert_eq!(parse("X0 - X0").unwrap().constant_value(), Some(rat(0)));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "X0 +", "1/X0", "1/0", "X0^-1", "(X0", "X0)", "x $ y", "X0^X1"] {
            assert!(parse(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn print_order() {
        let p = parse("1 + X1 + X0 + X0*X1 + X1^2").unwrap();
        assert_eq!(p.to_string(), "X0*X1 + X1^2 + X0 + X1 + 1");
        let q = parse("t^2 + 2*t - X1^2 - 2*X1").unwrap();
        assert_eq!(parse(&q.to_string()).unwrap(), q);
    }
}

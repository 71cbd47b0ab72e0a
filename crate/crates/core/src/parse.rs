//! Text form of polynomials.
//!
//! Grammar: terms joined by `+` / `-` (ASCII or U+2212); a term is a
//! `*`-joined product of factors, each an integer, a rational `a/b`, or a
//! variable power `name^k`. Whitespace is insignificant.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{CoefficientField, Scalar};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Num(String),
    Ident(String),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '+' => {
                out.push((pos, Tok::Plus));
                it.next();
            }
            '-' | '\u{2212}' => {
                out.push((pos, Tok::Minus));
                it.next();
            }
            '*' => {
                out.push((pos, Tok::Star));
                it.next();
            }
            '^' => {
                out.push((pos, Tok::Caret));
                it.next();
            }
            '/' => {
                out.push((pos, Tok::Slash));
                it.next();
            }
            c if c.is_ascii_digit() => {
                let mut n = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push((pos, Tok::Num(n)));
            }
            c if c.is_ascii_alphabetic() => {
                let mut n = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        n.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push((pos, Tok::Ident(n)));
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: alloc::format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn number(&mut self) -> Result<BigInt> {
        match self.toks.get(self.at) {
            Some((_, Tok::Num(n))) => {
                let v = n.parse().expect("digits");
                self.at += 1;
                Ok(v)
            }
            _ => self.err("expected a number"),
        }
    }

    fn small_number(&mut self) -> Result<u16> {
        let pos = self.pos();
        let n = self.number()?;
        u16::try_from(n).map_err(|_| Error::Syntax {
            pos,
            msg: "exponent too large".into(),
        })
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let field = self.ring.field();
        let mut coeff = Scalar::one();
        let mut exps = alloc::vec![0u16; self.ring.nvars()];
        loop {
            match self.peek().cloned() {
                Some(Tok::Num(_)) => {
                    let num = self.number()?;
                    let den = if self.peek() == Some(&Tok::Slash) {
                        self.at += 1;
                        self.number()?
                    } else {
                        BigInt::from(1)
                    };
                    let c = field.from_ratio(&num, &den)?;
                    coeff = field.mul(&coeff, &c);
                }
                Some(Tok::Ident(name)) => {
                    let v = self.ring.var(&name)?;
                    self.at += 1;
                    let e = if self.peek() == Some(&Tok::Caret) {
                        self.at += 1;
                        self.small_number()?
                    } else {
                        1
                    };
                    exps[v.0] = exps[v.0].checked_add(e).ok_or(Error::Syntax {
                        pos: self.pos(),
                        msg: "exponent too large".into(),
                    })?;
                }
                _ => return self.err("expected a number or a variable"),
            }
            if self.peek() == Some(&Tok::Star) {
                self.at += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_exponents(exps), coeff))
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        let mut terms = Vec::new();
        let mut first = true;
        while self.at < self.toks.len() {
            let negative = match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    true
                }
                _ if first => false,
                _ => return self.err("expected `+` or `-`"),
            };
            let (m, c) = self.term()?;
            let c = if negative { field.neg(&c) } else { c };
            terms.push((m, c));
            first = false;
        }
        if first {
            return self.err("empty polynomial");
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}

/// Parses the text form of a polynomial in `ring`.
pub fn parse_polynomial(ring: &Ring, s: &str) -> Result<Polynomial> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: s.len(),
        ring,
    };
    p.polynomial()
}

fn format_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.names()[i].clone()),
            e => parts.push(alloc::format!("{}^{}", ring.names()[i], e)),
        }
    }
    parts.join("*")
}

/// Canonical text form: terms in decreasing grevlex order.
pub fn format_polynomial(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let ring = f.ring();
    let signed = matches!(ring.field(), CoefficientField::Rationals);
    let mut out = String::new();
    for (i, (m, c)) in f.terms().iter().enumerate() {
        let negative = signed && c.signum() == Ordering::Less;
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = c.magnitude_string();
        if m.is_one() {
            out.push_str(&mag);
        } else {
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(&format_monomial(ring, m));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(CoefficientField::Rationals, &["x_1_1", "x_1_2", "x_2_2"]).unwrap()
    }

    #[test]
    fn parses_symmetric_determinant() {
        let r = ring();
        let f = parse_polynomial(&r, "x_1_1*x_2_2 - x_1_2^2").unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(format_polynomial(&f), "-x_1_2^2 + x_1_1*x_2_2");
        assert_eq!(parse_polynomial(&r, &format_polynomial(&f)).unwrap(), f);
    }

    #[test]
    fn zero_and_constants() {
        let r = ring();
        assert!(parse_polynomial(&r, "0").unwrap().is_zero());
        assert_eq!(format_polynomial(&parse_polynomial(&r, " -3/6 ").unwrap()), "-1/2");
        assert_eq!(format_polynomial(&parse_polynomial(&r, "2*x_1_1 \u{2212} x_1_1").unwrap()), "x_1_1");
    }

    #[test]
    fn unknown_variable() {
        let r = ring();
        assert_eq!(
            parse_polynomial(&r, "x_9_9").unwrap_err(),
            Error::UnknownVariable("x_9_9".into())
        );
    }

    #[test]
    fn syntax_errors() {
        let r = ring();
        assert!(matches!(parse_polynomial(&r, "x_1_1 +"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial(&r, "x_1_1 x_2_2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial(&r, ""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial(&r, "x_1_1 $ 2"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn prime_field_printing() {
        let r = ring().with_field(CoefficientField::prime(5).unwrap());
        let f = parse_polynomial(&r, "x_1_1 - x_1_2").unwrap();
        assert_eq!(format_polynomial(&f), "x_1_1 + 4*x_1_2");
    }
}

//! Text syntax: `3/2*z1^2*z2^-1 - z3 + 4`.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{LaurentPoly, Monomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

/// `z1, z2, ..., zm`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("z{i}")).collect()
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.pos + 1,
            message: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap()
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        let paren = self.eat(b'(');
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let col = self.pos;
        let d = self.digits()?;
        let v: i32 = match i32::try_from(d) {
            Ok(v) => v,
            Err(_) => {
                self.pos = col;
                return self.err("exponent out of range");
            }
        };
        if paren && !self.eat(b')') {
            return self.err("expected ')'");
        }
        Ok(if neg { -v } else { v })
    }
}

pub(crate) fn parse_poly(src: &str, names: &[String]) -> Result<LaurentPoly, ParseError> {
    let nvars = names.len();
    let mut lx = Lexer {
        s: src.as_bytes(),
        pos: 0,
    };
    if lx.peek().is_none() {
        return lx.err("empty polynomial");
    }
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = Rational::one();
        if lx.eat(b'-') {
            sign = -sign;
        } else if !lx.eat(b'+') && !first {
            return lx.err("expected '+' or '-'");
        }
        first = false;
        let mut coef = sign;
        let mut exps = vec![0i32; nvars];
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = lx.digits()?;
                    let mut r = Rational::from_integer(n);
                    if lx.eat(b'/') {
                        let col = lx.pos;
                        let d = lx.digits()?;
                        if d.is_zero() {
                            lx.pos = col;
                            return lx.err("zero denominator");
                        }
                        r /= Rational::from_integer(d);
                    }
                    coef *= r;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let col = lx.pos;
                    let name = lx.ident();
                    let Some(idx) = names.iter().position(|n| n == name) else {
                        lx.pos = col;
                        return lx.err(format!("unknown variable '{name}'"));
                    };
                    let e = if lx.eat(b'^') { lx.exponent()? } else { 1 };
                    exps[idx] += e;
                }
                Some(_) => return lx.err("expected coefficient or variable"),
                None => return lx.err("unexpected end of input"),
            }
            if !lx.eat(b'*') {
                break;
            }
        }
        terms.push((Monomial(exps), coef));
        match lx.peek() {
            None => break,
            Some(b'+') | Some(b'-') => {}
            Some(_) => return lx.err("expected '+', '-', '*' or end of input"),
        }
    }
    Ok(LaurentPoly::from_terms(nvars, terms))
}

fn write_rational(out: &mut String, r: &Rational) {
    if r.is_integer() {
        write!(out, "{}", r.numer()).unwrap();
    } else {
        write!(out, "{}/{}", r.numer(), r.denom()).unwrap();
    }
}

pub(crate) fn format_poly(p: &LaurentPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        let mut factors = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => factors.push(format!("{}^{}", names[i], e)),
            }
        }
        if factors.is_empty() {
            write_rational(&mut out, &a);
        } else {
            if !a.is_one() {
                write_rational(&mut out, &a);
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

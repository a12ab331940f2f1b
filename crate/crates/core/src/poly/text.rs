//! Text format: `c*v^e*...` terms joined by ` + ` / ` - `, leading term first.
//!
//! The parser also accepts parentheses, `^` on any factor, and rational
//! constants `a/b`, so hand-written catalog entries need not be canonical.

use num_bigint::BigInt;
use num_traits::One;

use super::{Monomial, PolyError, Polynomial, Ring};
use crate::field::Field;

pub(super) fn format<F: Field>(p: &Polynomial<F>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.ring().variables();
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        let (neg, abs) = p.field().signed_repr(c);
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_monomial(m, vars);
        if mono.is_empty() {
            out.push_str(&abs);
        } else {
            if abs != "1" {
                out.push_str(&abs);
                out.push('*');
            }
            out.push_str(&mono);
        }
    }
    out
}

pub fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for v in m.support() {
        let e = m.exp(v);
        if e == 1 {
            parts.push(vars[v].clone());
        } else {
            parts.push(format!("{}^{}", vars[v], e));
        }
    }
    parts.join("*")
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt, BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let err = |pos: usize, msg: &str| PolyError::Parse {
        pos,
        msg: msg.to_string(),
    };
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = s[start..i].parse().map_err(|_| err(start, "bad integer"))?;
            let mut den = BigInt::one();
            if i < b.len() && b[i] == b'/' {
                i += 1;
                let ds = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(err(ds, "expected denominator"));
                }
                den = s[ds..i].parse().map_err(|_| err(ds, "bad denominator"))?;
            }
            out.push((start, Tok::Num(num, den)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(err(i, &format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a Ring<F>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl<F: Field> Parser<'_, F> {
    fn err(&self, msg: &str) -> PolyError {
        let pos = self.toks.get(self.pos).map_or(self.len, |t| t.0);
        PolyError::Parse {
            pos,
            msg: msg.to_string(),
        }
    }

    fn peek_op(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some((_, Tok::Op(o))) if *o == c)
    }

    fn expr(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut neg = false;
        if self.peek_op('-') {
            neg = true;
            self.pos += 1;
        } else if self.peek_op('+') {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                acc = &acc + &self.term()?;
            } else if self.peek_op('-') {
                self.pos += 1;
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = self.power()?;
        while self.peek_op('*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial<F>, PolyError> {
        let base = self.atom()?;
        if self.peek_op('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some((_, Tok::Num(n, d))) if d.is_one() => {
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>, PolyError> {
        let tok = self.toks.get(self.pos).cloned();
        match tok {
            Some((_, Tok::Num(n, d))) => {
                self.pos += 1;
                let c = self
                    .ring
                    .field()
                    .from_ratio(&n, &d)
                    .ok_or_else(|| self.err("denominator vanishes in the field"))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some((_, Tok::Ident(v))) => {
                self.pos += 1;
                Polynomial::var_named(self.ring, &v)
            }
            Some((_, Tok::Op('('))) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.peek_op(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some((_, Tok::Op('-'))) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

pub(super) fn parse<F: Field>(ring: &Ring<F>, s: &str) -> Result<Polynomial<F>, PolyError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(PolyError::Parse {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        len: s.len(),
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

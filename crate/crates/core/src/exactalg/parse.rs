//! ASCII polynomial grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*      divisors must be nonzero constants
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers start with a letter or `_` and may contain digits, e.g.
//! `3*l^2*m - 1/2*m^3` or `a1*b2`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ParamPoly, Rat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ParamPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc += &self.term()?;
            } else if self.eat_op('-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ParamPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat_op('/') {
                let d = self.unary()?;
                let c = d
                    .constant_value()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::Parse("division by a non-constant or zero".into()))?;
                acc = acc.scale(&(Rat::from_integer(1.into()) / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ParamPoly> {
        if self.eat_op('-') {
            return Ok(-self.unary()?);
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<ParamPoly> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("expected integer exponent after `^`".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ParamPoly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(ParamPoly::constant(Rat::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(ParamPoly::var(&name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

pub fn parse_poly(s: &str) -> Result<ParamPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {}",
            p.pos + 1
        )));
    }
    Ok(out)
}

impl FromStr for ParamPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pencil_entries() {
        let p: ParamPoly = "3*l^2*m - 1/2*m^3".parse().unwrap();
        assert_eq!(p.to_string(), "3*l^2*m - 1/2*m^3");
        let q: ParamPoly = "(l + m)^2 - l^2 - m^2".parse().unwrap();
        assert_eq!(q.to_string(), "2*l*m");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("3*").is_err());
        assert!(parse_poly("l / m").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("l $ m").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("(l").is_err());
        assert!(parse_poly("l m").is_err());
    }
}

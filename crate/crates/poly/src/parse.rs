//! Text syntax for Laurent polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only by nonzero monomials (including integer constants), so
//! `3/2*b^2*q^-1` and `q*w/p` are accepted. The output of `Display` parses
//! back to the same polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{PolyError, Result};
use crate::poly::LaurentPoly;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(ch) {
            out.push((i, Tok::Sym(ch)));
            i += 1;
        } else {
            let c = text[i..].chars().next().unwrap_or('?');
            return Err(PolyError::Parse {
                pos: i,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(PolyError::Parse {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.at += 1;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|e| match e {
                    PolyError::NonMonomialDivisor { .. } | PolyError::DivisionByZero => PolyError::Parse {
                        pos,
                        message: e.to_string(),
                    },
                    other => other,
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let pos = self.pos();
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return self.err("expected an integer exponent");
        };
        self.at += 1;
        let n: i64 = match i32::try_from(&n) {
            Ok(v) => v as i64,
            Err(_) => return Err(PolyError::ExponentOverflow),
        };
        let n = if neg { -n } else { n };
        base.pow(n).map_err(|e| match e {
            PolyError::NonMonomialDivisor { .. } | PolyError::DivisionByZero => PolyError::Parse {
                pos,
                message: format!("negative power needs a nonzero monomial base: {e}"),
            },
            other => other,
        })
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(LaurentPoly::constant(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(LaurentPoly::var(&name))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn poly_parse(text: &str) -> Result<LaurentPoly> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        end: text.len(),
    };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

impl std::str::FromStr for LaurentPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self> {
        poly_parse(s)
    }
}

//! Text syntax for polynomials: `3*x^2*y - y^3 + 2`.
//!
//! A term is an optional integer coefficient followed by factors `v` or
//! `v^e` joined by `*`; terms are joined by `+` or `-`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::IntPoly;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map(|s| s.chars().count()).unwrap_or(0) + 1;
        Error::Parse { line, column, message: message.into() }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.bump();
                Some(false)
            }
            Some('-') | Some('\u{2212}') => {
                self.bump();
                Some(true)
            }
            _ => None,
        }
    }
}

/// Parses a polynomial with integer coefficients over the named variables.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<IntPoly> {
    let n = vars.len();
    let mut cur = Cursor { src: text, pos: 0 };
    let mut terms: Vec<(Monomial, BigInt)> = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.error("empty polynomial"));
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        let negative = match cur.sign() {
            Some(s) => s,
            None if first => false,
            None => return Err(cur.error("expected `+` or `-` between terms")),
        };
        first = false;
        cur.skip_ws();
        let mut coeff = BigInt::from(1);
        let mut exps = vec![0u32; n];
        let mut have_coeff = false;
        let mut have_factor = false;
        if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            let d = cur.digits();
            coeff = d.parse::<BigInt>().map_err(|_| cur.error("bad coefficient"))?;
            have_coeff = true;
            cur.skip_ws();
            if cur.peek() == Some('*') {
                cur.bump();
                cur.skip_ws();
                if !matches!(cur.peek(), Some(c) if c.is_alphabetic() || c == '_') {
                    return Err(cur.error("expected a variable after `*`"));
                }
            }
        }
        loop {
            cur.skip_ws();
            match cur.peek() {
                Some(c) if c.is_alphabetic() || c == '_' => {}
                _ => break,
            }
            let start = cur.pos;
            let name = cur.ident();
            let Some(idx) = vars.iter().position(|v| v == name) else {
                cur.pos = start;
                return Err(cur.error(format!("unknown variable `{name}`")));
            };
            cur.skip_ws();
            let mut e = 1u32;
            if cur.peek() == Some('^') {
                cur.bump();
                cur.skip_ws();
                let d = cur.digits();
                if d.is_empty() {
                    return Err(cur.error("expected an exponent after `^`"));
                }
                e = d.parse().map_err(|_| cur.error("exponent too large"))?;
            }
            exps[idx] += e;
            have_factor = true;
            cur.skip_ws();
            if cur.peek() == Some('*') {
                cur.bump();
                cur.skip_ws();
                if !matches!(cur.peek(), Some(c) if c.is_alphabetic() || c == '_') {
                    return Err(cur.error("expected a variable after `*`"));
                }
            }
        }
        if !have_coeff && !have_factor {
            return Err(cur.error("expected a term"));
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((Monomial::from_slice(&exps), coeff));
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
    }
    IntPoly::from_int_terms(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    #[test]
    fn parses_terms() {
        let f = parse_polynomial("3*x^2*y - y^3 + 2", &vars()).unwrap();
        assert_eq!(f.len(), 3);
        let g = parse_polynomial("x*x*y-y^3+2+x^2*y+x^2*y", &vars()).unwrap();
        assert_eq!(f, g);
        let h = parse_polynomial("  -x ", &vars()).unwrap();
        assert_eq!(h.terms()[0].1, BigInt::from(-1));
        let u = parse_polynomial("x − y", &vars()).unwrap();
        assert_eq!(u.len(), 2);
        assert!(parse_polynomial("x - x", &vars()).unwrap().is_zero());
    }

    #[test]
    fn positional_errors() {
        match parse_polynomial("x + w", &vars()) {
            Err(Error::Parse { column, message, .. }) => {
                assert_eq!(column, 5);
                assert!(message.contains("unknown variable"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_polynomial("", &vars()).is_err());
        assert!(parse_polynomial("x^", &vars()).is_err());
        assert!(parse_polynomial("x y", &vars()).is_ok());
        assert!(parse_polynomial("x + + y", &vars()).is_err());
        assert!(parse_polynomial("3*", &vars()).is_err());
    }
}

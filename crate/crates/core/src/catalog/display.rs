// SPDX-License-Identifier: Apache-2.0

//! Evaluator for the LaTeX subset used in torus cells, for example
//! `(Z_{\epsilon{q}-1})^2\times{Z}_{q^6+(\epsilon{q})^3+1}`.
//!
//! A cell is a `\times`-separated list of cyclic factors `Z_{expr}`, possibly
//! grouped as `( … )^k`. Inside `expr`, `q` is the field order, `\epsilon{q}`
//! is εq, juxtaposition multiplies, and braces group like parentheses.

use num_bigint::BigInt;
use num_traits::{Pow, Signed};

use crate::numtheory::SignChoice;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Z,
    Underscore,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Caret,
    Plus,
    Minus,
    Times,
    Q,
    EpsQ,
    Num(u64),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, String> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let rest = &src[i..];
        let (tok, len) = match bytes[i] {
            b' ' | b'\t' | b'\n' => {
                i += 1;
                continue;
            }
            _ if rest.starts_with("{Z}") => (Tok::Z, 3),
            _ if rest.starts_with("\\times") => (Tok::Times, 6),
            _ if rest.starts_with("\\epsilon{q}") => (Tok::EpsQ, 11),
            b'Z' => (Tok::Z, 1),
            b'_' => (Tok::Underscore, 1),
            b'{' => (Tok::LBrace, 1),
            b'}' => (Tok::RBrace, 1),
            b'(' => (Tok::LParen, 1),
            b')' => (Tok::RParen, 1),
            b'^' => (Tok::Caret, 1),
            b'+' => (Tok::Plus, 1),
            b'-' => (Tok::Minus, 1),
            b'q' => (Tok::Q, 1),
            b'0'..=b'9' => {
                let len = rest.bytes().take_while(u8::is_ascii_digit).count();
                let n = rest[..len].parse().map_err(|e| format!("{e}"))?;
                (Tok::Num(n), len)
            }
            _ => return Err(format!("unexpected input at byte {i}: {rest:?}")),
        };
        out.push((tok, i));
        i += len;
    }
    Ok(out)
}

/// Polynomial expression in q and εq.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Q,
    EpsQ,
    Num(u64),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn eval(&self, q: &BigInt, eps: SignChoice) -> BigInt {
        match self {
            Expr::Q => q.clone(),
            Expr::EpsQ => eps.apply(q),
            Expr::Num(n) => BigInt::from(*n),
            Expr::Neg(e) => -e.eval(q, eps),
            Expr::Sum(terms) => terms.iter().map(|t| t.eval(q, eps)).sum(),
            Expr::Product(fs) => fs.iter().map(|f| f.eval(q, eps)).product(),
            Expr::Pow(b, k) => b.eval(q, eps).pow(*k),
        }
    }
}

/// One cyclic factor `Z_{expr}` together with its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayFactor {
    pub source: String,
    pub expr: Expr,
}

impl DisplayFactor {
    /// |expr| at (q, ε).
    pub fn order(&self, q: &BigInt, eps: SignChoice) -> BigInt {
        self.expr.eval(q, eps).abs()
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |(_, o)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), String> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            other => Err(format!("expected {want:?}, found {other:?} at token {}", self.pos - 1)),
        }
    }

    fn torus(&mut self) -> Result<Vec<DisplayFactor>, String> {
        let mut out = self.item()?;
        while self.peek() == Some(&Tok::Times) {
            self.bump();
            out.extend(self.item()?);
        }
        Ok(out)
    }

    fn item(&mut self) -> Result<Vec<DisplayFactor>, String> {
        match self.peek() {
            Some(Tok::Z) => Ok(vec![self.z_factor()?]),
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.torus()?;
                self.expect(Tok::RParen)?;
                let k = if self.peek() == Some(&Tok::Caret) {
                    self.bump();
                    self.exponent()?
                } else {
                    1
                };
                let mut out = Vec::with_capacity(inner.len() * k as usize);
                for _ in 0..k {
                    out.extend(inner.iter().cloned());
                }
                Ok(out)
            }
            other => Err(format!("expected a cyclic factor, found {other:?}")),
        }
    }

    fn z_factor(&mut self) -> Result<DisplayFactor, String> {
        let start = self.offset();
        self.expect(Tok::Z)?;
        self.expect(Tok::Underscore)?;
        self.expect(Tok::LBrace)?;
        let expr = self.expr()?;
        self.expect(Tok::RBrace)?;
        let end = self.offset();
        Ok(DisplayFactor {
            source: self.src[start..end].trim().to_string(),
            expr,
        })
    }

    fn exponent(&mut self) -> Result<u32, String> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(n as u32),
            Some(Tok::LBrace) => {
                let n = self.exponent()?;
                self.expect(Tok::RBrace)?;
                Ok(n)
            }
            other => Err(format!("expected an exponent, found {other:?}")),
        }
    }

    fn expr(&mut self) -> Result<Expr, String> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            terms.push(if negate { Expr::Neg(Box::new(t)) } else { t });
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => break,
            }
            self.bump();
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, String> {
        let mut factors = vec![self.power()?];
        while matches!(
            self.peek(),
            Some(Tok::LParen | Tok::LBrace | Tok::Q | Tok::EpsQ | Tok::Num(_))
        ) {
            factors.push(self.power()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            Expr::Product(factors)
        })
    }

    fn power(&mut self) -> Result<Expr, String> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            return Ok(Expr::Pow(Box::new(base), self.exponent()?));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, String> {
        match self.bump() {
            Some(Tok::Q) => Ok(Expr::Q),
            Some(Tok::EpsQ) => Ok(Expr::EpsQ),
            Some(Tok::Num(n)) => Ok(Expr::Num(n)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::LBrace) => {
                let e = self.expr()?;
                self.expect(Tok::RBrace)?;
                Ok(e)
            }
            other => Err(format!("expected an operand, found {other:?}")),
        }
    }
}

/// Parses a whole cell into its cyclic factors, expanding `( … )^k`.
pub fn parse_cell(src: &str) -> Result<Vec<DisplayFactor>, String> {
    let mut p = Parser {
        src,
        toks: lex(src)?,
        pos: 0,
    };
    let out = p.torus()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input at byte {}", p.offset()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(src: &str, q: i64, eps: SignChoice) -> Vec<BigInt> {
        parse_cell(src)
            .unwrap()
            .iter()
            .map(|f| f.order(&BigInt::from(q), eps))
            .collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn power_of_a_group_expands() {
        let v = orders(r"(Z_{\epsilon{q}-1})^7", 5, SignChoice::Plus);
        assert_eq!(v, ints(&[4; 7]));
    }

    #[test]
    fn implicit_multiplication_and_sign() {
        let src = r"Z_{\epsilon{q}-1}\times{Z}_{q^6+(\epsilon{q})^3+1}";
        assert_eq!(orders(src, 5, SignChoice::Minus), ints(&[6, 15501]));
        let src = r"Z_{((\epsilon{q})+1)((\epsilon{q})^7-1)}";
        assert_eq!(orders(src, 2, SignChoice::Plus), ints(&[3 * 127]));
        assert_eq!(orders(src, 2, SignChoice::Minus), ints(&[129]));
    }

    #[test]
    fn sources_are_kept() {
        let f = parse_cell(r"(Z_{q^2-1})^2\times{Z}_{q^4-1}").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f[0].source, "Z_{q^2-1}");
        assert_eq!(f[2].source, "{Z}_{q^4-1}");
    }

    #[test]
    fn malformed_cells_are_rejected() {
        assert!(parse_cell(r"(Z_{(q+1)(q^3-1))^2}").is_err());
        assert!(parse_cell(r"Z_{(\epsilon{q}-1)(q^6+\epsilon{q}+1})").is_err());
        assert!(parse_cell(r"Z_{\epsilon{q}-1}\times any torus").is_err());
    }
}

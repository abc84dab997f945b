//! Recursive-descent parser for the textual polynomial grammar.
//!
//! Variables are `x1`..`x9`; coefficients are integer, decimal or rational
//! literals, or single-letter parameters resolved through a binding map.
//! Operators are `+ - * ^` with parentheses; `^` takes a non-negative
//! integer exponent. The full EBNF lives in `docs/grammar.md`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{MultiIndex, Polynomial, SymbolPolynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Var(usize), // zero-based
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str, bindings: &HashMap<String, BigRational>) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                let num = lex_number(bytes, &mut i)?;
                // `a/b` immediately after an integer is a rational literal
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(syntax(i, "expected denominator after `/`"));
                    }
                    let den = lex_number(bytes, &mut i)?;
                    if den.is_zero() {
                        return Err(syntax(start, "zero denominator"));
                    }
                    toks.push((Tok::Num(num / den), start));
                } else {
                    toks.push((Tok::Num(num), start));
                }
            }
            'x' if i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() => {
                let d = (bytes[i + 1] - b'0') as usize;
                if d == 0 {
                    return Err(syntax(i, "variable index must be 1..9"));
                }
                toks.push((Tok::Var(d - 1), i));
                i += 2;
            }
            'a'..='z' | 'A'..='Z' => {
                let name = c.to_string();
                match bindings.get(&name) {
                    Some(v) => toks.push((Tok::Num(v.clone()), i)),
                    None => return Err(Error::UnboundParameter(name)),
                }
                i += 1;
            }
            _ => return Err(syntax(i, format!("unexpected character `{c}`"))),
        }
    }
    Ok(toks)
}

fn lex_number(bytes: &[u8], i: &mut usize) -> Result<BigRational> {
    let start = *i;
    let mut int_part = BigInt::zero();
    let mut saw_digit = false;
    while *i < bytes.len() && bytes[*i].is_ascii_digit() {
        int_part = int_part * 10 + BigInt::from(bytes[*i] - b'0');
        saw_digit = true;
        *i += 1;
    }
    let mut value = BigRational::from_integer(int_part);
    if *i < bytes.len() && bytes[*i] == b'.' {
        *i += 1;
        let mut frac = BigInt::zero();
        let mut scale = BigInt::one();
        let mut saw_frac = false;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            frac = frac * 10 + BigInt::from(bytes[*i] - b'0');
            scale *= 10;
            saw_frac = true;
            *i += 1;
        }
        if !saw_frac && !saw_digit {
            return Err(syntax(start, "malformed number"));
        }
        value += BigRational::new(frac, scale);
    } else if !saw_digit {
        return Err(syntax(start, "malformed number"));
    }
    Ok(value)
}

#[derive(Debug)]
enum Ast {
    Num(BigRational),
    Var(usize),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    max_var: Option<usize>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|&(_, p)| p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut node = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ast::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    node = Ast::Add(Box::new(node), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    node = Ast::Sub(Box::new(node), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<Ast> {
        let mut node = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            node = Ast::Mul(Box::new(node), Box::new(self.factor()?));
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let pos = self.here();
            match self.bump() {
                Some(Tok::Num(r)) if r.is_integer() && !r.numer().sign().eq(&num_bigint::Sign::Minus) => {
                    let e: u32 = r
                        .to_integer()
                        .try_into()
                        .map_err(|_| syntax(pos, "exponent too large"))?;
                    Ok(Ast::Pow(Box::new(base), e))
                }
                _ => Err(syntax(pos, "expected non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Num(r)) => Ok(Ast::Num(r)),
            Some(Tok::Var(i)) => {
                self.max_var = Some(self.max_var.map_or(i, |m| m.max(i)));
                Ok(Ast::Var(i))
            }
            Some(Tok::LParen) => {
                let node = self.expr()?;
                let pos = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(node),
                    _ => Err(syntax(pos, "expected `)`")),
                }
            }
            _ => Err(syntax(pos, "expected number, variable or `(`")),
        }
    }
}

fn build(ast: &Ast, n: usize) -> Polynomial {
    match ast {
        Ast::Num(r) => Polynomial::constant(n, r.clone()),
        Ast::Var(i) => {
            let mut exps = vec![0; n];
            exps[*i] = 1;
            let mut p = Polynomial::zero(n);
            p.add_term(MultiIndex::new(exps), BigRational::one());
            p
        }
        Ast::Add(a, b) => build(a, n).add(&build(b, n)),
        Ast::Sub(a, b) => build(a, n).sub(&build(b, n)),
        Ast::Mul(a, b) => build(a, n).mul(&build(b, n)),
        Ast::Neg(a) => build(a, n).neg(),
        Ast::Pow(a, e) => build(a, n).pow(*e),
    }
}

/// Parse an expression into a [`Polynomial`]. The dimension is the largest
/// variable index appearing in the text (at least `min_dim`).
pub fn parse_polynomial(
    text: &str,
    bindings: &HashMap<String, BigRational>,
    min_dim: usize,
) -> Result<Polynomial> {
    let toks = lex(text, bindings)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        max_var: None,
    };
    let ast = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return Err(syntax(parser.here(), "unexpected trailing input"));
    }
    let n = parser
        .max_var
        .map(|m| m + 1)
        .unwrap_or(0)
        .max(min_dim)
        .max(1);
    Ok(build(&ast, n))
}

/// Parse an expression as an operator symbol, inferring m from the common
/// total degree. Errors on non-homogeneous input, odd degree, unbound
/// parameters and the zero polynomial.
pub fn parse_symbol(
    text: &str,
    bindings: &HashMap<String, BigRational>,
) -> Result<SymbolPolynomial> {
    SymbolPolynomial::from_polynomial(parse_polynomial(text, bindings, 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::rat;

    fn no_bindings() -> HashMap<String, BigRational> {
        HashMap::new()
    }

    #[test]
    fn parses_bilaplacian() {
        let s = parse_symbol("x1^4 + 2*x1^2*x2^2 + x2^4", &no_bindings()).unwrap();
        assert_eq!(s.half_order(), 2);
        assert_eq!(s.polynomial().num_terms(), 3);
        assert_eq!(s.dimension(), 2);
    }

    #[test]
    fn parameter_binding_matches_literal() {
        let mut b = HashMap::new();
        b.insert("b".to_string(), rat(1, 1));
        let s1 = parse_symbol("x1^4 + 2*b*x1^2*x2^2 + x2^4", &b).unwrap();
        let s2 = parse_symbol("x1^4 + 2*x1^2*x2^2 + x2^4", &no_bindings()).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn rejects_non_homogeneous() {
        let err = parse_symbol("x1^4 + x1^2", &no_bindings()).unwrap_err();
        assert!(matches!(err, Error::NonHomogeneous(_, _)));
    }

    #[test]
    fn rejects_odd_degree_and_zero() {
        assert!(matches!(
            parse_symbol("x1^3 + x2^3", &no_bindings()),
            Err(Error::OddDegree(3))
        ));
        assert!(matches!(
            parse_symbol("x1^2 - x1^2", &no_bindings()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn rejects_unbound_parameter() {
        assert!(matches!(
            parse_symbol("x1^2 + c*x2^2", &no_bindings()),
            Err(Error::UnboundParameter(p)) if p == "c"
        ));
    }

    #[test]
    fn syntax_error_reports_position() {
        match parse_symbol("x1^2 + ", &no_bindings()) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn literals_decimal_and_rational() {
        let p = parse_polynomial("0.5*x1 + 1/2*x2", &no_bindings(), 0).unwrap();
        let q = parse_polynomial("(x1 + x2)*1/2", &no_bindings(), 0).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn round_trip_canonical_print() {
        let mut b = HashMap::new();
        b.insert("b".to_string(), rat(-1, 2));
        let s = parse_symbol("x2^4 + 2*b*x1^2*x2^2 + x1^4", &b).unwrap();
        let reparsed = parse_symbol(&s.canonical_text(), &no_bindings()).unwrap();
        assert_eq!(s, reparsed);
    }
}

//! Text grammar for polynomials and ideals.
//!
//! ```text
//! poly   := term ("+" term)*
//! term   := [coef "*"] factor ("*" factor)* | coef
//! factor := "x" index ["^" nat]
//! coef   := rational | "-inf"
//! ```
//! `⊕` and `⊙` are accepted for `+` and `*`.

mod json;

pub use json::{curve_from_json, curve_from_value, curve_to_json, curve_to_value};

use crate::error::{Error, Result};
use crate::poly::{Ideal, Monomial, TropPolynomial};
use crate::scalar::{fmt_rat, Rat, TropScalar};
use num_bigint::BigInt;
use std::fmt;

/// Variable indices above this are rejected.
pub const MAX_VARS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub msg: String,
    pub span: SourceSpan,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at bytes {}..{}",
            self.msg, self.span.start, self.span.end
        )
    }
}

impl std::error::Error for ParseError {}

type Term = (TropScalar, Vec<(usize, u64)>);

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    base: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(
        &self,
        msg: impl Into<String>,
        start: usize,
        end: usize,
    ) -> std::result::Result<T, ParseError> {
        Err(ParseError {
            msg: msg.into(),
            span: SourceSpan::new(self.base + start, self.base + end),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn is_plus(c: char) -> bool {
        c == '+' || c == '⊕'
    }

    fn is_star(c: char) -> bool {
        c == '*' || c == '⊙'
    }

    fn poly(&mut self) -> std::result::Result<Vec<Term>, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(terms),
                Some(c) if Self::is_plus(c) => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Some(c) => {
                    let s = self.pos;
                    return self.err(
                        format!("unexpected {c:?}, expected '+'"),
                        s,
                        s + c.len_utf8(),
                    );
                }
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Term, ParseError> {
        self.skip_ws();
        let mut factors = Vec::new();
        let coef = match self.peek() {
            Some('x') => TropScalar::zero(),
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let coef = self.coef()?;
                self.skip_ws();
                match self.peek() {
                    Some(c) if Self::is_star(c) => {
                        self.bump();
                        self.skip_ws();
                    }
                    _ => return Ok((coef, factors)),
                }
                coef
            }
            Some(c) => {
                let s = self.pos;
                return self.err(
                    format!("unexpected {c:?}, expected a term"),
                    s,
                    s + c.len_utf8(),
                );
            }
            None => {
                let s = self.pos;
                return self.err("missing term", s, s);
            }
        };
        factors.push(self.factor()?);
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if Self::is_star(c) => {
                    self.bump();
                    self.skip_ws();
                    factors.push(self.factor()?);
                }
                _ => return Ok((coef, factors)),
            }
        }
    }

    fn coef(&mut self) -> std::result::Result<TropScalar, ParseError> {
        let start = self.pos;
        let neg = self.peek() == Some('-');
        if neg {
            self.bump();
        }
        if self.src[self.pos..].starts_with("inf") {
            self.pos += 3;
            if !neg {
                return self.err("only -inf is allowed", start, self.pos);
            }
            return Ok(TropScalar::NegInf);
        }
        let num = self.digits();
        if num.is_empty() {
            return self.err(
                "expected a number",
                start,
                self.pos.max(start + 1).min(self.src.len()),
            );
        }
        let mut n: BigInt = num.parse().expect("digits");
        if neg {
            n = -n;
        }
        if self.peek() == Some('/') {
            self.bump();
            let den = self.digits();
            if den.is_empty() {
                return self.err("expected a denominator", start, self.pos);
            }
            let d: BigInt = den.parse().expect("digits");
            if d == BigInt::from(0) {
                return self.err("zero denominator", start, self.pos);
            }
            return Ok(TropScalar::Fin(Rat::new(n, d)));
        }
        Ok(TropScalar::Fin(Rat::from_integer(n)))
    }

    fn factor(&mut self) -> std::result::Result<(usize, u64), ParseError> {
        let start = self.pos;
        if self.bump() != Some('x') {
            return self.err("expected a variable x<index>", start, self.pos);
        }
        let idx = self.digits();
        if idx.is_empty() {
            return self.err("missing variable index", start, self.pos);
        }
        let i: usize = match idx.parse() {
            Ok(i) if i <= MAX_VARS => i,
            _ => return self.err(format!("variable index above {MAX_VARS}"), start, self.pos),
        };
        if i == 0 {
            return self.err("variable indices start at 1", start, self.pos);
        }
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok((i, 1));
        }
        self.bump();
        self.skip_ws();
        let es = self.pos;
        if self.peek() == Some('-') {
            self.bump();
            self.digits();
            return self.err("negative exponent", es, self.pos);
        }
        let e = self.digits();
        if e.is_empty() {
            return self.err("expected an exponent", es, self.pos.max(es));
        }
        match e.parse::<u64>() {
            Ok(v) => Ok((i, v)),
            Err(_) => self.err("exponent too large", es, self.pos),
        }
    }
}

fn parse_terms(text: &str, base: usize) -> std::result::Result<(Vec<Term>, usize), ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        base,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(ParseError {
            msg: "empty polynomial".into(),
            span: SourceSpan::new(base, base + text.len()),
        });
    }
    let terms = p.poly()?;
    let n = terms
        .iter()
        .flat_map(|(_, fs)| fs.iter().map(|f| f.0))
        .max()
        .unwrap_or(0);
    Ok((terms, n))
}

fn build(terms: Vec<Term>, nvars: usize) -> TropPolynomial {
    let monos: Vec<Monomial> = terms
        .into_iter()
        .filter(|(c, _)| !c.is_bottom())
        .map(|(c, fs)| {
            let mut e = vec![0u64; nvars];
            for (i, x) in fs {
                e[i - 1] = e[i - 1].saturating_add(x);
            }
            Monomial { coeff: c, exps: e }
        })
        .collect();
    if monos.is_empty() {
        return TropPolynomial::bottom(nvars);
    }
    TropPolynomial::new(nvars, monos).expect("parsed monomials are well formed")
}

/// Parses a polynomial; the variable count is the largest index used (at least 1).
pub fn parse_poly(text: &str) -> Result<TropPolynomial> {
    let (terms, n) = parse_terms(text, 0)?;
    Ok(build(terms, n.max(1)))
}

/// Parses a polynomial in exactly `nvars` variables.
pub fn parse_poly_n(text: &str, nvars: usize) -> Result<TropPolynomial> {
    let (terms, n) = parse_terms(text, 0)?;
    if n > nvars {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            got: n,
        });
    }
    Ok(build(terms, nvars.max(1)))
}

/// Generators separated by ';' or newlines; blank generators are skipped.
pub fn parse_ideal(text: &str) -> Result<Ideal> {
    parse_ideal_impl(text, None)
}

/// Like [`parse_ideal`] with the variable count fixed.
pub fn parse_ideal_n(text: &str, nvars: usize) -> Result<Ideal> {
    parse_ideal_impl(text, Some(nvars))
}

fn parse_ideal_impl(text: &str, nvars: Option<usize>) -> Result<Ideal> {
    let mut parsed = Vec::new();
    let mut errors = Vec::new();
    let mut start = 0;
    for (i, c) in text
        .char_indices()
        .chain(std::iter::once((text.len(), ';')))
    {
        if c != ';' && c != '\n' {
            continue;
        }
        let piece = &text[start..i];
        if !piece.trim().is_empty() {
            match parse_terms(piece, start) {
                Ok(t) => parsed.push(t),
                Err(e) => errors.push(e),
            }
        } else if c == ';' && i < text.len() {
            errors.push(ParseError {
                msg: "empty generator".into(),
                span: SourceSpan::new(start, i),
            });
        }
        start = i + c.len_utf8();
    }
    if !errors.is_empty() {
        return Err(if errors.len() == 1 {
            Error::Parse(errors.remove(0))
        } else {
            Error::ParseMany(errors)
        });
    }
    if parsed.is_empty() {
        return Err(Error::Parse(ParseError {
            msg: "empty ideal".into(),
            span: SourceSpan::new(0, text.len()),
        }));
    }
    let used = parsed.iter().map(|(_, n)| *n).max().unwrap_or(0).max(1);
    let n = match nvars {
        Some(n) if used > n => {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: used,
            })
        }
        Some(n) => n,
        None => used,
    };
    Ideal::new(parsed.into_iter().map(|(t, _)| build(t, n)).collect())
}

fn fmt_monomial(m: &Monomial) -> String {
    let factors: Vec<String> = m
        .exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect();
    let c = match &m.coeff {
        TropScalar::NegInf => return "-inf".into(),
        TropScalar::Fin(c) => c,
    };
    if factors.is_empty() {
        return fmt_rat(c);
    }
    let body = factors.join("*");
    if *c == Rat::from_integer(BigInt::from(0)) {
        body
    } else {
        format!("{}*{}", fmt_rat(c), body)
    }
}

/// Canonical text: monomials in ascending lexicographic exponent order.
pub fn poly_to_string(f: &TropPolynomial) -> String {
    f.monomials()
        .iter()
        .map(fmt_monomial)
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn ideal_to_string(i: &Ideal) -> String {
    i.generators()
        .iter()
        .map(poly_to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

impl fmt::Display for TropPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly_to_string(self))
    }
}

//! Text format for polynomials, field elements, and polynomial files.
//!
//! ```text
//! poly     := ["-"] term (("+" | "-") term)*
//! term     := [coeff ["*"]] factor ("*" factor)*  |  coeff
//! factor   := "x" nat ["^" nat]
//! coeff    := nat | "(" elemexpr ")" | "a" ["^" nat]
//! elemexpr := polynomial in the generator `a` with integer coefficients
//! ```

use std::fmt;

use super::{HomogPoly, Monomial, PolyError};
use crate::gf::{make_field, Elem, Field};

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            s: s.as_bytes(),
            pos: 0,
        }
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

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::SyntaxError {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn nat(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| PolyError::SyntaxError {
                pos: start,
                msg: "number too large".into(),
            })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn generator(field: &Field, lx: &Lexer) -> Result<Elem, PolyError> {
    if field.degree() == 1 {
        return Err(PolyError::CoefficientNotInField(format!(
            "a (at position {}) in the prime field F_{}",
            lx.pos,
            field.order()
        )));
    }
    Ok(field.generator())
}

/// `a` or `a^n`, with the `a` already peeked.
fn gen_power(field: &Field, lx: &mut Lexer) -> Result<Elem, PolyError> {
    let g = generator(field, lx)?;
    lx.pos += 1;
    let e = if lx.eat(b'^') { lx.nat()? } else { 1 };
    Ok(field.pow(g, e))
}

/// Sum of terms `[int ["*"]] [a["^"n]]` inside parentheses.
fn elem_expr(field: &Field, lx: &mut Lexer) -> Result<Elem, PolyError> {
    let mut acc = Elem::ZERO;
    let mut first = true;
    loop {
        let neg = if lx.eat(b'-') {
            true
        } else if first || lx.eat(b'+') {
            false
        } else {
            break;
        };
        first = false;
        let mut val = Elem::ONE;
        let mut any = false;
        if matches!(lx.peek(), Some(c) if c.is_ascii_digit()) {
            val = field.from_int((lx.nat()? % field.characteristic() as u64) as i64);
            any = true;
            lx.eat(b'*');
        }
        if lx.peek() == Some(b'a') {
            val = field.mul(val, gen_power(field, lx)?);
            any = true;
        }
        if !any {
            return Err(lx.err("expected an element term"));
        }
        acc = if neg {
            field.sub(acc, val)
        } else {
            field.add(acc, val)
        };
        if !matches!(lx.peek(), Some(b'+') | Some(b'-')) {
            break;
        }
    }
    Ok(acc)
}

fn coeff(field: &Field, lx: &mut Lexer) -> Result<Option<Elem>, PolyError> {
    match lx.peek() {
        Some(c) if c.is_ascii_digit() => {
            let n = lx.nat()?;
            Ok(Some(field.from_int((n % field.characteristic() as u64) as i64)))
        }
        Some(b'(') => {
            lx.pos += 1;
            let v = elem_expr(field, lx)?;
            if !lx.eat(b')') {
                return Err(lx.err("expected ')'"));
            }
            Ok(Some(v))
        }
        Some(b'a') => Ok(Some(gen_power(field, lx)?)),
        _ => Ok(None),
    }
}

/// Parses a field element literal: an integer, `a`, `a^n`, or a
/// parenthesised expression in `a`.
pub fn parse_elem(text: &str, field: &Field) -> Result<Elem, PolyError> {
    let mut lx = Lexer::new(text);
    let neg = lx.eat(b'-');
    let v = match lx.peek() {
        Some(b'(') | Some(b'a') => coeff(field, &mut lx)?,
        Some(c) if c.is_ascii_digit() => Some(elem_expr(field, &mut lx)?),
        _ => None,
    }
    .ok_or_else(|| lx.err("expected a field element"))?;
    if !lx.at_end() {
        return Err(lx.err("trailing input"));
    }
    Ok(if neg { field.neg(v) } else { v })
}

/// Parses a homogeneous polynomial in `x0, ..., x{nvars-1}`.
pub fn parse_poly(text: &str, field: &Field, nvars: usize) -> Result<HomogPoly, PolyError> {
    let mut lx = Lexer::new(text);
    let mut terms: Vec<(Monomial, Elem)> = Vec::new();
    let mut degree: Option<u64> = None;
    let mut neg = lx.eat(b'-');
    loop {
        let c = coeff(field, &mut lx)?;
        let had_coeff = c.is_some();
        let mut c = c.unwrap_or(Elem::ONE);
        if neg {
            c = field.neg(c);
        }
        let mut exps = vec![0u32; nvars];
        let mut nfactors = 0;
        if had_coeff {
            lx.eat(b'*');
        }
        loop {
            if lx.peek() != Some(b'x') {
                if nfactors > 0 || had_coeff {
                    break;
                }
                return Err(lx.err("expected a term"));
            }
            lx.pos += 1;
            let idx = lx.nat()? as usize;
            if idx >= nvars {
                return Err(PolyError::UnknownVariable(idx));
            }
            let e = if lx.eat(b'^') { lx.nat()? } else { 1 };
            exps[idx] = exps[idx]
                .checked_add(u32::try_from(e).map_err(|_| lx.err("exponent too large"))?)
                .ok_or_else(|| lx.err("exponent too large"))?;
            nfactors += 1;
            if !lx.eat(b'*') {
                break;
            }
        }
        let m = Monomial::new(&exps);
        let literal_zero = nfactors == 0 && c.is_zero();
        if !literal_zero {
            match degree {
                None => degree = Some(m.degree()),
                Some(d) if d != m.degree() => {
                    return Err(PolyError::NotHomogeneous {
                        expected: d,
                        found: m.degree(),
                    });
                }
                _ => {}
            }
            terms.push((m, c));
        }
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.pos += 1;
                neg = false;
            }
            Some(b'-') => {
                lx.pos += 1;
                neg = true;
            }
            Some(_) => return Err(lx.err("expected '+', '-' or end of input")),
        }
    }
    HomogPoly::from_terms(field, nvars, degree.unwrap_or(0), terms)
}

/// Element literal as used inside polynomials and points: decimal for the
/// prime subfield, bare `a` or `a^n` for pure generator powers, otherwise a
/// parenthesised expression in `a`.
pub fn format_elem_literal(field: &Field, e: Elem) -> String {
    let s = field.format_elem(e);
    if field.degree() == 1 || e.0 < field.characteristic() || !s.contains('+') && !s.contains('*')
    {
        s
    } else {
        format!("({s})")
    }
}

impl fmt::Display for HomogPoly {
    /// Canonical form: terms in decreasing grevlex order joined by ` + `,
    /// unit coefficients omitted, all coefficients in normal form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in self.terms().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{e}")
                    }
                })
                .collect();
            let cs = format_elem_literal(self.field(), c);
            match (vars.is_empty(), c == Elem::ONE) {
                (true, _) => write!(f, "{cs}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{cs}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Contents of a polynomial file: a header fixing the field and the
/// projective dimension `n` (so `n + 1` variables), then one polynomial per
/// line.
#[derive(Clone, Debug)]
pub struct PolyFile {
    pub field: Field,
    pub n: usize,
    pub polys: Vec<HomogPoly>,
}

/// Parses `p=<p> k=<k> mod=[c0,...,ck] n=<n>`; `mod` may be omitted.
pub fn parse_header(line: &str) -> Result<(Field, usize), PolyError> {
    let bad = || PolyError::BadHeader(line.trim().to_string());
    let (mut p, mut k, mut m, mut n) = (None, None, None, None);
    for tok in line.split_whitespace() {
        let (key, val) = tok.split_once('=').ok_or_else(bad)?;
        match key {
            "p" => p = Some(val.parse::<u64>().map_err(|_| bad())?),
            "k" => k = Some(val.parse::<u32>().map_err(|_| bad())?),
            "n" => n = Some(val.parse::<usize>().map_err(|_| bad())?),
            "mod" => {
                let inner = val
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(bad)?;
                let cs: Result<Vec<u32>, _> =
                    inner.split(',').map(|c| c.trim().parse::<u32>()).collect();
                m = Some(cs.map_err(|_| bad())?);
            }
            _ => return Err(bad()),
        }
    }
    let (p, k, n) = (p.ok_or_else(bad)?, k.ok_or_else(bad)?, n.ok_or_else(bad)?);
    let field = make_field(p, k, m.as_deref())?;
    Ok((field, n))
}

pub fn parse_file(text: &str) -> Result<PolyFile, PolyError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hl, header) = lines
        .next()
        .ok_or_else(|| PolyError::BadHeader(String::new()))?;
    let (field, n) = parse_header(header).map_err(|e| PolyError::AtLine {
        line: hl + 1,
        source: Box::new(e),
    })?;
    let mut polys = Vec::new();
    for (i, l) in lines {
        let p = parse_poly(l, &field, n + 1).map_err(|e| PolyError::AtLine {
            line: i + 1,
            source: Box::new(e),
        })?;
        polys.push(p);
    }
    Ok(PolyFile { field, n, polys })
}

pub fn write_file(field: &Field, n: usize, polys: &[HomogPoly]) -> String {
    let mut s = format!("{} n={}\n", field.header(), n);
    for p in polys {
        s.push_str(&p.to_string());
        s.push('\n');
    }
    s
}

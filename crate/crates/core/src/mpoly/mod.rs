//! Sparse homogeneous polynomials over a finite field.

mod monomial;
mod parse;
mod gcd;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::gf::{Elem, Embedding, Field, FieldElement, GfError, Matrix};
use crate::upoly::UPoly;

pub use monomial::{count_monomials, monomials_of_degree, Monomial};
pub use parse::{
    format_elem_literal, parse_elem, parse_file, parse_header, parse_poly, write_file, PolyFile,
};

/// Largest admissible total degree.
pub const MAX_DEGREE: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("polynomial is not homogeneous: term of degree {found} after degree {expected}")]
    NotHomogeneous { expected: u64, found: u64 },
    #[error("unknown variable x{0}")]
    UnknownVariable(usize),
    #[error("coefficient {0} does not lie in the field")]
    CoefficientNotInField(String),
    #[error("variable index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("expected {expected} coordinates, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix has shape {rows}x{cols}, expected {exp_rows}x{exp_cols}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        exp_rows: usize,
        exp_cols: usize,
    },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("the zero form has no roots to inspect")]
    ZeroForm,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("degree {0} exceeds the 2^31 budget")]
    DegreeOverflow(u64),
    #[error("expected a binary form, got {0} variables")]
    NotBinary(usize),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<PolyError>,
    },
    #[error("bad file header: {0}")]
    BadHeader(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A homogeneous polynomial; every stored coefficient is nonzero and every
/// exponent vector has total degree `degree`. The zero polynomial keeps a
/// nominal degree.
#[derive(Clone)]
pub struct HomogPoly {
    field: Field,
    nvars: usize,
    degree: u64,
    terms: BTreeMap<Monomial, Elem>,
}

/// Equality ignores the nominal degree of the zero polynomial.
impl PartialEq for HomogPoly {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field
            && self.nvars == o.nvars
            && self.terms == o.terms
            && (self.degree == o.degree || self.terms.is_empty())
    }
}
impl Eq for HomogPoly {}

impl std::hash::Hash for HomogPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.nvars.hash(state);
        self.terms.hash(state);
    }
}

/// Homogeneous polynomial in two variables.
pub type BinaryForm = HomogPoly;

impl fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl HomogPoly {
    pub fn zero(field: &Field, nvars: usize, degree: u64) -> Self {
        HomogPoly {
            field: field.clone(),
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from terms, summing repeated monomials and
    /// dropping zero coefficients.
    pub fn from_terms(
        field: &Field,
        nvars: usize,
        degree: u64,
        terms: impl IntoIterator<Item = (Monomial, Elem)>,
    ) -> Result<Self, PolyError> {
        if degree > MAX_DEGREE {
            return Err(PolyError::DegreeOverflow(degree));
        }
        let mut p = Self::zero(field, nvars, degree);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(PolyError::LengthMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            if m.degree() != degree {
                return Err(PolyError::NotHomogeneous {
                    expected: degree,
                    found: m.degree(),
                });
            }
            if !field.contains(c) {
                return Err(PolyError::CoefficientNotInField(c.0.to_string()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Convenience: terms given as (coefficient, exponent slice).
    pub fn from_slices(field: &Field, terms: &[(Elem, &[u32])]) -> Result<Self, PolyError> {
        let nvars = terms.first().map_or(0, |t| t.1.len());
        let degree = terms
            .first()
            .map_or(0, |t| t.1.iter().map(|&e| e as u64).sum());
        Self::from_terms(
            field,
            nvars,
            degree,
            terms.iter().map(|(c, e)| (Monomial::new(e), *c)),
        )
    }

    pub fn monomial(field: &Field, c: Elem, exps: &[u32]) -> Self {
        let m = Monomial::new(exps);
        let mut p = Self::zero(field, exps.len(), m.degree());
        p.add_term(m, c);
        p
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear(field: &Field, coeffs: &[Elem]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(field, n, 1);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var_pow(n, i, 1), c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Elem) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.get(m).copied().unwrap_or(Elem::ZERO)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Elem)> {
        self.terms.iter().next_back()
    }

    /// Same polynomial with a different nominal degree; only meaningful for
    /// the zero polynomial.
    pub fn with_nominal_degree(mut self, d: u64) -> Self {
        if self.is_zero() {
            self.degree = d;
        }
        self
    }

    fn check_compatible(&self, o: &HomogPoly) -> Result<(), PolyError> {
        self.field.check_same(&o.field)?;
        if self.nvars != o.nvars {
            return Err(PolyError::LengthMismatch {
                expected: self.nvars,
                found: o.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &HomogPoly) -> Result<HomogPoly, PolyError> {
        self.check_compatible(o)?;
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != o.degree {
            return Err(PolyError::NotHomogeneous {
                expected: self.degree,
                found: o.degree,
            });
        }
        let mut out = self.clone();
        for (m, &c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &HomogPoly) -> Result<HomogPoly, PolyError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> HomogPoly {
        self.map_coeffs(|c| self.field.neg(c))
    }

    pub fn scale(&self, c: Elem) -> HomogPoly {
        if c.is_zero() {
            return Self::zero(&self.field, self.nvars, self.degree);
        }
        self.map_coeffs(|x| self.field.mul(c, x))
    }

    fn map_coeffs(&self, f: impl Fn(Elem) -> Elem) -> HomogPoly {
        let mut out = Self::zero(&self.field, self.nvars, self.degree);
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn mul(&self, o: &HomogPoly) -> Result<HomogPoly, PolyError> {
        self.check_compatible(o)?;
        let deg = self.degree + o.degree;
        if deg > MAX_DEGREE {
            return Err(PolyError::DegreeOverflow(deg));
        }
        let f = &self.field;
        let mut out = Self::zero(f, self.nvars, deg);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &o.terms {
                out.add_term(m1.mul(m2), f.mul(c1, c2));
            }
        }
        Ok(out)
    }

    /// Product with the monomial `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: Elem) -> HomogPoly {
        let f = &self.field;
        let mut out = Self::zero(f, self.nvars, self.degree + m.degree());
        if c.is_zero() {
            return out;
        }
        for (m1, &c1) in &self.terms {
            out.terms.insert(m1.mul(m), f.mul(c1, c));
        }
        out
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<HomogPoly, PolyError> {
        if i >= self.nvars {
            return Err(PolyError::IndexOutOfRange(i));
        }
        let f = &self.field;
        let mut out = Self::zero(f, self.nvars, self.degree.saturating_sub(1));
        for (m, &c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let k = f.from_int(e as i64);
            if k.is_zero() {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, f.mul(k, c));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<HomogPoly> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).unwrap())
            .collect()
    }

    /// Euler's identity `sum x_i dF/dx_i = d F`.
    pub fn euler_check(&self) -> EulerVerdict {
        let mut lhs = Self::zero(&self.field, self.nvars, self.degree);
        for i in 0..self.nvars {
            let di = self.partial_derivative(i).unwrap();
            let xi = Monomial::var_pow(self.nvars, i, 1);
            lhs = lhs.add(&di.mul_term(&xi, Elem::ONE)).unwrap();
        }
        let rhs = self.scale(self.field.from_int(self.degree as i64));
        EulerVerdict {
            holds: lhs == rhs,
            lhs,
            rhs,
        }
    }

    /// Value at a point whose coordinates live in a field containing the
    /// coefficient field.
    pub fn evaluate(&self, coords: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if coords.len() != self.nvars {
            return Err(PolyError::LengthMismatch {
                expected: self.nvars,
                found: coords.len(),
            });
        }
        let target = match coords.first() {
            Some(c) => c.field().clone(),
            None => self.field.clone(),
        };
        for c in coords {
            target.check_same(c.field())?;
        }
        let ev = Evaluator::new(self, &target)?;
        let raw: Vec<Elem> = coords.iter().map(|c| c.value()).collect();
        Ok(target.element(ev.eval(&raw)))
    }

    /// Substitutes `x_i <- sum_j M_ij y_j`.
    pub fn substitute_linear(&self, m: &Matrix, out_nvars: usize) -> Result<HomogPoly, PolyError> {
        if m.nrows() != self.nvars || m.ncols() != out_nvars {
            return Err(PolyError::DimensionMismatch {
                rows: m.nrows(),
                cols: m.ncols(),
                exp_rows: self.nvars,
                exp_cols: out_nvars,
            });
        }
        self.field.check_same(m.field())?;
        let f = &self.field;
        let forms: Vec<HomogPoly> = (0..self.nvars)
            .map(|i| HomogPoly::linear(f, m.row(i)))
            .collect();
        // Cache powers of each substituted linear form.
        let mut powers: Vec<Vec<HomogPoly>> = forms
            .iter()
            .map(|_| vec![HomogPoly::monomial(f, Elem::ONE, &vec![0; out_nvars])])
            .collect();
        let mut out = Self::zero(f, out_nvars, self.degree);
        for (mono, &c) in &self.terms {
            let mut term = HomogPoly::monomial(f, c, &vec![0; out_nvars]);
            for (i, &e) in mono.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&forms[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize])?;
            }
            out = out.add(&term)?;
        }
        Ok(out.with_nominal_degree(self.degree))
    }

    /// Decides whether `self` divides `g`, returning the quotient if so.
    /// Uses leading-term reduction; with a single divisor the remainder is
    /// zero exactly when the division is exact.
    pub fn divides(&self, g: &HomogPoly) -> Result<Option<HomogPoly>, PolyError> {
        self.check_compatible(g)?;
        let Some((lm, &lc)) = self.leading_term() else {
            return Err(PolyError::ZeroDivisor);
        };
        let f = &self.field;
        if g.is_zero() {
            return Ok(Some(Self::zero(
                f,
                self.nvars,
                g.degree.saturating_sub(self.degree),
            )));
        }
        if g.degree < self.degree {
            return Ok(None);
        }
        let lc_inv = f.inv(lc).unwrap();
        let lm = lm.clone();
        let mut rem = g.terms.clone();
        let mut quot = Self::zero(f, self.nvars, g.degree - self.degree);
        while let Some((m, &c)) = rem.iter().next_back() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let qm = lm.div_into(m);
            let qc = f.mul(c, lc_inv);
            for (m1, &c1) in &self.terms {
                let mm = m1.mul(&qm);
                let delta = f.mul(qc, c1);
                match rem.entry(mm) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(f.neg(delta));
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = f.sub(*o.get(), delta);
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// `Some(root)` with `root^p = self` when every exponent is divisible
    /// by the characteristic.
    pub fn pth_root(&self) -> Option<HomogPoly> {
        let f = &self.field;
        let p = f.characteristic();
        let mut out = Self::zero(f, self.nvars, self.degree / p as u64);
        for (m, &c) in &self.terms {
            if m.0.iter().any(|&e| e % p != 0) {
                return None;
            }
            out.add_term(Monomial(m.0.iter().map(|&e| e / p).collect()), f.pth_root(c));
        }
        Some(out)
    }

    pub fn is_pth_power(&self) -> bool {
        self.pth_root().is_some()
    }

    /// `F^(p^j)`, computed termwise.
    pub fn frobenius_twist(&self, j: u32) -> Result<HomogPoly, PolyError> {
        let f = &self.field;
        let pj = (f.characteristic() as u64)
            .checked_pow(j)
            .filter(|&v| v <= MAX_DEGREE)
            .ok_or(PolyError::DegreeOverflow(u64::MAX))?;
        let deg = self.degree * pj;
        if deg > MAX_DEGREE {
            return Err(PolyError::DegreeOverflow(deg));
        }
        let mut out = Self::zero(f, self.nvars, deg);
        for (m, &c) in &self.terms {
            out.terms
                .insert(m.scale_exps(pj as u32), f.pow(c, pj));
        }
        Ok(out)
    }

    /// `F^e`, using the base-p digits of `e` and Frobenius twists.
    pub fn pow(&self, e: u64) -> Result<HomogPoly, PolyError> {
        let deg = self
            .degree
            .checked_mul(e)
            .filter(|&d| d <= MAX_DEGREE)
            .ok_or(PolyError::DegreeOverflow(self.degree.saturating_mul(e)))?;
        let f = &self.field;
        let p = f.characteristic() as u64;
        let mut acc = HomogPoly::monomial(f, Elem::ONE, &vec![0; self.nvars]);
        let mut rest = e;
        let mut j = 0u32;
        while rest > 0 {
            let digit = rest % p;
            if digit > 0 {
                let tw = self.frobenius_twist(j)?;
                for _ in 0..digit {
                    acc = acc.mul(&tw)?;
                }
            }
            rest /= p;
            j += 1;
        }
        Ok(acc.with_nominal_degree(deg))
    }

    /// The same polynomial with coefficients pushed into an extension.
    pub fn embed(&self, target: &Field) -> Result<HomogPoly, PolyError> {
        let emb = Embedding::between(&self.field, target)?;
        let mut out = Self::zero(target, self.nvars, self.degree);
        for (m, &c) in &self.terms {
            out.terms.insert(m.clone(), emb.apply(c));
        }
        Ok(out)
    }

    /// Inverse of [`embed`](Self::embed): succeeds when every coefficient
    /// lies in the image of `target`.
    pub fn restrict_to(&self, target: &Field) -> Option<HomogPoly> {
        let emb = Embedding::between(target, &self.field).ok()?;
        let mut out = Self::zero(target, self.nvars, self.degree);
        for (m, &c) in &self.terms {
            out.terms.insert(m.clone(), emb.preimage(c)?);
        }
        Some(out)
    }

    /// Whether every coefficient lies in the subfield of order `p^j`.
    pub fn coefficients_in_subfield(&self, j: u32) -> bool {
        self.terms.values().all(|&c| self.field.in_subfield(c, j))
    }

    /// Indices of variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    /// For a binary form, `f(x, 1)` as a univariate polynomial in `x = x_0`.
    pub fn dehomogenize_binary(&self) -> Result<UPoly<Field>, PolyError> {
        if self.nvars != 2 {
            return Err(PolyError::NotBinary(self.nvars));
        }
        let mut c = vec![Elem::ZERO; self.degree as usize + 1];
        for (m, &v) in &self.terms {
            c[m.0[0] as usize] = v;
        }
        Ok(UPoly::from_elems(&self.field, &c))
    }

    /// Whether a binary form has no repeated root on `P^1` over the
    /// algebraic closure.
    pub fn binary_squarefree(&self) -> Result<bool, PolyError> {
        let g = self.dehomogenize_binary()?;
        if self.is_zero() {
            return Err(PolyError::ZeroForm);
        }
        let deg = g.degree().unwrap_or(0) as u64;
        if self.degree - deg > 1 {
            return Ok(false);
        }
        if deg == 0 {
            return Ok(true);
        }
        Ok(g.gcd(&g.derivative()).degree() == Some(0))
    }
}

/// Both sides of Euler's identity.
#[derive(Clone, Debug)]
pub struct EulerVerdict {
    pub holds: bool,
    pub lhs: HomogPoly,
    pub rhs: HomogPoly,
}

/// Monic gcd of univariate polynomials.
pub fn univariate_gcd(f: &UPoly<Field>, g: &UPoly<Field>) -> Result<UPoly<Field>, PolyError> {
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::BothZero);
    }
    Ok(f.gcd(g))
}

/// A polynomial compiled for repeated evaluation over a fixed field.
pub struct Evaluator {
    field: Field,
    terms: Vec<(Elem, Vec<u32>)>,
    max_exp: Vec<u32>,
}

impl Evaluator {
    pub fn new(poly: &HomogPoly, target: &Field) -> Result<Self, PolyError> {
        let emb = Embedding::between(poly.field(), target)?;
        let mut max_exp = vec![0u32; poly.nvars()];
        let terms = poly
            .terms()
            .map(|(m, &c)| {
                for (i, &e) in m.exps().iter().enumerate() {
                    max_exp[i] = max_exp[i].max(e);
                }
                (emb.apply(c), m.exps().to_vec())
            })
            .collect();
        Ok(Evaluator {
            field: target.clone(),
            terms,
            max_exp,
        })
    }

    pub fn eval(&self, x: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for (c, e) in &self.terms {
            let mut t = *c;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = f.mul(t, f.pow(x[i], k as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn max_exponents(&self) -> &[u32] {
        &self.max_exp
    }
}

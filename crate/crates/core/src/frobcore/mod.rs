//! Frobenius nonclassicality: the polynomials `F_{a,b}`, the divisibility
//! test `F | F_{1,0}`, pointwise tangency checks, and Frobenius forms.

mod hermitian;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::gf::{make_field, Elem, GfError};
use crate::mpoly::{HomogPoly, Monomial, PolyError, MAX_DEGREE};
use crate::projgeom::{point_count, unrank_point, GeomError, ProjPoint};

pub use hermitian::{
    as_frobenius_form, hermitian_decompose, hermitian_normalize, hermitian_tests,
    is_hermitian_hypersurface, HermitianTests, HermitianVerdict, SesquiMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobError {
    #[error("the zero polynomial defines no hypersurface")]
    ZeroPolynomial,
    #[error("{q} is not a power of the characteristic {p}")]
    NotAPowerOfP { q: u64, p: u32 },
    #[error("coefficients are not defined over the field of order {0}")]
    NotDefinedOver(u64),
    #[error("F_(a,b) would have degree above 2^31")]
    DegreeOverflow,
    #[error("degree {found} does not match the required {expected}")]
    DegreeMismatch { expected: u64, found: u64 },
    #[error("{0} is not a square")]
    NotASquare(u64),
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("operation needs odd characteristic")]
    CharacteristicTwo,
    #[error("field order {found} differs from the required {expected}")]
    WrongFieldOrder { expected: u64, found: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// `log_p(q)` when `q` is a positive power of `p`.
pub fn log_p(q: u64, p: u32) -> Option<u32> {
    let mut e = 0;
    let mut v = 1u64;
    while v < q {
        v = v.checked_mul(p as u64)?;
        e += 1;
    }
    (v == q && e > 0).then_some(e)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `F` rewritten over the smallest field of the form `F_{p^g}` with
/// `g | log_p(q)` and `g | k` that holds its coefficients; errors if the
/// coefficients do not lie in `F_q`.
pub fn defined_over(poly: &HomogPoly, q: u64) -> Result<HomogPoly, FrobError> {
    let f = poly.field();
    let p = f.characteristic();
    let e = log_p(q, p).ok_or(FrobError::NotAPowerOfP { q, p })?;
    if e % f.degree() == 0 {
        return Ok(poly.clone());
    }
    let g = gcd(e, f.degree());
    if !poly.coefficients_in_subfield(g) {
        return Err(FrobError::NotDefinedOver(q));
    }
    let sub = make_field(p as u64, g, None)?;
    poly.restrict_to(&sub).ok_or(FrobError::NotDefinedOver(q))
}

/// `F_{a,b} = sum_i x_i^{q^a} (dF/dx_i)^{q^b}`.
pub fn compute_fab(poly: &HomogPoly, a: u32, b: u32, q: u64) -> Result<HomogPoly, FrobError> {
    let p = poly.field().characteristic();
    let e = log_p(q, p).ok_or(FrobError::NotAPowerOfP { q, p })?;
    let qa = q.checked_pow(a).ok_or(FrobError::DegreeOverflow)?;
    let qb = q.checked_pow(b).ok_or(FrobError::DegreeOverflow)?;
    let d = poly.degree();
    let deg = qb
        .checked_mul(d.saturating_sub(1))
        .and_then(|v| v.checked_add(qa))
        .ok_or(FrobError::DegreeOverflow)?;
    if deg > MAX_DEGREE {
        return Err(FrobError::DegreeOverflow);
    }
    let n = poly.nvars();
    let mut out = HomogPoly::zero(poly.field(), n, deg);
    for i in 0..n {
        let di = poly.partial_derivative(i)?;
        if di.is_zero() {
            continue;
        }
        let twisted = di.frobenius_twist(e * b)?;
        let xi = Monomial::var_pow(n, i, qa as u32);
        out = out.add(&twisted.mul_term(&xi, Elem::ONE))?;
    }
    Ok(out.with_nominal_degree(deg))
}

/// How `F_{1,0}` relates to `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum F10Kind {
    /// `F_{1,0} = 0`.
    Zero,
    /// `F_{1,0} = c F^e` with `e = (q + d - 1) / d`.
    ScalarPower { c: Elem, e: u64 },
    /// `F` divides `F_{1,0}` with a quotient of another shape.
    DivisibleOther,
    NotDivisible,
}

impl F10Kind {
    pub fn name(&self) -> &'static str {
        match self {
            F10Kind::Zero => "zero",
            F10Kind::ScalarPower { .. } => "scalar_power",
            F10Kind::DivisibleOther => "divisible_other",
            F10Kind::NotDivisible => "not_divisible",
        }
    }
}

/// Verdict of the divisibility test `F | F_{1,0}` over `F_q`.
#[derive(Clone, Debug)]
pub struct FrobClassification {
    pub nonclassical: bool,
    pub kind: F10Kind,
    pub q: u64,
    pub f10: HomogPoly,
    /// The raw quotient `F_{1,0} / F` when it exists. No normalization is
    /// applied; only its existence carries meaning.
    pub quotient: Option<HomogPoly>,
}

impl FrobClassification {
    pub fn to_json(&self) -> Value {
        let (c, e) = match &self.kind {
            F10Kind::ScalarPower { c, e } => (
                Some(crate::mpoly::format_elem_literal(self.f10.field(), *c)),
                Some(*e),
            ),
            _ => (None, None),
        };
        json!({
            "nonclassical": self.nonclassical,
            "kind": self.kind.name(),
            "q": self.q,
            "c": c,
            "e": e,
            "quotient": self.quotient.as_ref().map(|q| q.to_string()),
        })
    }
}

/// Decides Frobenius nonclassicality of `{F = 0}` over `F_q`: whether `F`
/// divides `F_{1,0}`, and if so whether `F_{1,0}` is a scalar multiple of
/// the power of `F` forced by degrees.
pub fn is_frobenius_nonclassical(poly: &HomogPoly, q: u64) -> Result<FrobClassification, FrobError> {
    if poly.is_zero() {
        return Err(FrobError::ZeroPolynomial);
    }
    let f = defined_over(poly, q)?;
    let f10 = compute_fab(&f, 1, 0, q)?;
    let field = f.field().clone();
    if f10.is_zero() {
        let quotient = Some(HomogPoly::zero(&field, f.nvars(), q - 1));
        return Ok(FrobClassification {
            nonclassical: true,
            kind: F10Kind::Zero,
            q,
            f10,
            quotient,
        });
    }
    let Some(quot) = f.divides(&f10)? else {
        return Ok(FrobClassification {
            nonclassical: false,
            kind: F10Kind::NotDivisible,
            q,
            f10,
            quotient: None,
        });
    };
    let d = f.degree();
    let mut kind = F10Kind::DivisibleOther;
    if (q + d - 1) % d == 0 {
        let e = (q + d - 1) / d;
        let pw = f.pow(e - 1)?;
        let (_, &lq) = quot.leading_term().expect("nonzero quotient");
        let (_, &lp) = pw.leading_term().expect("nonzero power");
        let c = field.div(lq, lp)?;
        if pw.scale(c) == quot {
            kind = F10Kind::ScalarPower { c, e };
        }
    }
    Ok(FrobClassification {
        nonclassical: true,
        kind,
        q,
        f10,
        quotient: Some(quot),
    })
}

/// Runs the classification over `F_{q^m}` for each requested `m`.
pub fn multi_fn_profile(
    poly: &HomogPoly,
    q: u64,
    degrees: &[u32],
) -> Result<Vec<(u32, FrobClassification)>, FrobError> {
    degrees
        .iter()
        .map(|&m| {
            let qm = q.checked_pow(m).ok_or(FrobError::DegreeOverflow)?;
            Ok((m, is_frobenius_nonclassical(poly, qm)?))
        })
        .collect()
}

/// Outcome of checking `Phi(P) in T_P X` at every smooth point over
/// `F_{q^m}`.
#[derive(Clone, Debug)]
pub struct PointwiseVerdict {
    pub passed: bool,
    pub smooth_points_checked: u64,
    pub counterexample: Option<ProjPoint>,
}

/// Checks the geometric definition directly: for every smooth point `P`
/// of `X` over `F_{q^m}`, the point `Phi(P) = (P_i^q)` lies on the tangent
/// hyperplane at `P`.
pub fn pointwise_fn_check(poly: &HomogPoly, q: u64, m: u32) -> Result<PointwiseVerdict, FrobError> {
    let f = defined_over(poly, q)?;
    let p = f.field().characteristic();
    let e = log_p(q, p).unwrap();
    let ext = make_field(p as u64, e * m, None)?;
    let fe = f.embed(&ext)?;
    let grads: Vec<crate::mpoly::Evaluator> = fe
        .gradient()
        .iter()
        .map(|g| crate::mpoly::Evaluator::new(g, &ext))
        .collect::<Result<_, _>>()?;
    let ev = crate::mpoly::Evaluator::new(&fe, &ext)?;
    let n = fe.nvars() - 1;
    let total = point_count(n, ext.order() as u64);
    let qq = ext.order() as u64;
    // None: not a smooth point; Some(true): passes; Some(false): fails.
    let test = |idx: u64| -> Option<bool> {
        let mut x = vec![Elem::ZERO; n + 1];
        unrank_point(qq, idx, &mut x);
        if !ev.eval(&x).is_zero() {
            return None;
        }
        let g: Vec<Elem> = grads.iter().map(|g| g.eval(&x)).collect();
        if g.iter().all(|c| c.is_zero()) {
            return None;
        }
        let s = g.iter().zip(&x).fold(Elem::ZERO, |acc, (&gi, &xi)| {
            ext.add(acc, ext.mul(gi, ext.pow(xi, q)))
        });
        Some(s.is_zero())
    };
    let checked = (0..total)
        .into_par_iter()
        .filter(|&i| test(i).is_some())
        .count() as u64;
    let bad = (0..total)
        .into_par_iter()
        .find_first(|&i| test(i) == Some(false));
    Ok(PointwiseVerdict {
        passed: bad.is_none(),
        smooth_points_checked: checked,
        counterexample: bad.map(|i| ProjPoint::at_index(&ext, n, i)),
    })
}

#[cfg(test)]
mod tests;

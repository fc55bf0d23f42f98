//! Singular points, smoothness certificates, and the Macaulay resultant.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{ext_field, AnalysisError};
use crate::gf::{Elem, Field, Matrix};
use crate::mpoly::{monomials_of_degree, Evaluator, HomogPoly, Monomial};
use crate::projgeom::{point_count, unrank_point, ProjPoint};

/// Largest Macaulay matrix (rows times columns) built for a certificate.
pub const MAX_MACAULAY_ENTRIES: usize = 40_000_000;

/// All points of `P^n(F_{q^m})` where `F` and every partial derivative
/// vanish, in enumeration order.
pub fn singular_points(poly: &HomogPoly, m: u32) -> Result<Vec<ProjPoint>, AnalysisError> {
    let ext = ext_field(poly.field(), m)?;
    let n = poly.nvars() - 1;
    let mut evs = vec![Evaluator::new(poly, &ext)?];
    for g in poly.gradient() {
        if !g.is_zero() {
            evs.push(Evaluator::new(&g, &ext)?);
        }
    }
    let q = ext.order() as u64;
    let hits: Vec<u64> = (0..point_count(n, q))
        .into_par_iter()
        .filter(|&i| {
            let mut x = vec![Elem::ZERO; n + 1];
            unrank_point(q, i, &mut x);
            evs.iter().all(|e| e.eval(&x).is_zero())
        })
        .collect();
    Ok(hits
        .into_iter()
        .map(|i| ProjPoint::at_index(&ext, n, i))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothnessMode {
    /// No singular `F_q`-points.
    RationalOnly,
    /// No singular points over `F_{q^m}` for `m <= M`.
    Extension(u32),
    /// Geometric smoothness decided exactly.
    Certified,
}

impl SmoothnessMode {
    pub fn name(&self) -> String {
        match self {
            SmoothnessMode::RationalOnly => "rational_only".into(),
            SmoothnessMode::Extension(m) => format!("extension({m})"),
            SmoothnessMode::Certified => "certified".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SmoothnessVerdict {
    pub smooth: bool,
    pub mode: SmoothnessMode,
    /// `true` when the verdict holds over the algebraic closure: a certified
    /// run, or a singular point found.
    pub exact: bool,
    /// Largest extension degree searched, for enumeration modes.
    pub searched_up_to: Option<u32>,
    pub witness: Option<ProjPoint>,
}

impl SmoothnessVerdict {
    pub fn label(&self) -> &'static str {
        if self.exact {
            "certified"
        } else {
            "partial certificate"
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "smooth": self.smooth,
            "mode": self.mode.name(),
            "certificate": self.label(),
            "searched_up_to": self.searched_up_to,
            "witness": self.witness.as_ref().map(|p| p.to_string()),
        })
    }
}

/// Smoothness of `{F = 0}` in the requested mode. Certified mode works for
/// every `n` and `p`; it only fails when the linear system is too large.
pub fn smoothness(poly: &HomogPoly, mode: SmoothnessMode) -> Result<SmoothnessVerdict, AnalysisError> {
    if poly.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    match mode {
        SmoothnessMode::RationalOnly => {
            let s = singular_points(poly, 1)?;
            Ok(SmoothnessVerdict {
                smooth: s.is_empty(),
                mode,
                exact: !s.is_empty(),
                searched_up_to: Some(1),
                witness: s.into_iter().next(),
            })
        }
        SmoothnessMode::Extension(big_m) => {
            let mut reached = 0;
            for m in 1..=big_m {
                if ext_field(poly.field(), m).is_err() {
                    break;
                }
                reached = m;
                if let Some(p) = singular_points(poly, m)?.into_iter().next() {
                    return Ok(SmoothnessVerdict {
                        smooth: false,
                        mode,
                        exact: true,
                        searched_up_to: Some(m),
                        witness: Some(p),
                    });
                }
            }
            Ok(SmoothnessVerdict {
                smooth: true,
                mode,
                exact: false,
                searched_up_to: Some(reached),
                witness: None,
            })
        }
        SmoothnessMode::Certified => {
            let smooth = certify_smooth(poly)?;
            let witness = if smooth {
                None
            } else {
                singular_points(poly, 1)?.into_iter().next()
            };
            Ok(SmoothnessVerdict {
                smooth,
                mode,
                exact: true,
                searched_up_to: None,
                witness,
            })
        }
    }
}

/// Certified mode with a fallback to `extension(M)` when the linear system
/// exceeds the size cap.
pub fn best_smoothness(poly: &HomogPoly, fallback_m: u32) -> Result<SmoothnessVerdict, AnalysisError> {
    match smoothness(poly, SmoothnessMode::Certified) {
        Err(AnalysisError::UncertifiableCase(_)) => {
            smoothness(poly, SmoothnessMode::Extension(fallback_m))
        }
        r => r,
    }
}

fn index_of(ms: &[Monomial]) -> HashMap<Monomial, usize> {
    ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Whether the forms span every form of degree `big_d`.
fn spans_degree(field: &Field, nvars: usize, forms: &[HomogPoly], big_d: u64) -> Result<bool, AnalysisError> {
    let cols_m = monomials_of_degree(nvars, big_d as u32);
    let cols = cols_m.len();
    let idx = index_of(&cols_m);
    let mut shifts = Vec::new();
    for g in forms {
        shifts.push(monomials_of_degree(nvars, (big_d - g.degree()) as u32));
    }
    let rows: usize = shifts.iter().map(|s| s.len()).sum();
    if rows < cols {
        return Ok(false);
    }
    if rows.saturating_mul(cols) > MAX_MACAULAY_ENTRIES {
        return Err(AnalysisError::UncertifiableCase(format!(
            "Macaulay matrix of size {rows} x {cols} exceeds the cap"
        )));
    }
    let mut data = vec![Elem::ZERO; rows * cols];
    let mut r = 0;
    for (g, sh) in forms.iter().zip(&shifts) {
        for s in sh {
            for (t, &c) in g.terms() {
                data[r * cols + idx[&t.mul(s)]] = c;
            }
            r += 1;
        }
    }
    Ok(crate::gf::rank_in_place(field, &mut data, rows, cols) == cols)
}

/// Exact geometric smoothness. The forms `G_1, ..., G_k` of degree at most
/// `delta` in `n + 1` variables have no common zero over the closure iff
/// they span all forms of degree `(n + 1)(delta - 1) + 1`. The generators
/// are the partials when `p` does not divide `d`, and `F` with its partials
/// otherwise.
pub fn certify_smooth(poly: &HomogPoly) -> Result<bool, AnalysisError> {
    let field = poly.field();
    let p = field.characteristic() as u64;
    let d = poly.degree();
    let nv = poly.nvars();
    let mut gens: Vec<HomogPoly> = poly.gradient().into_iter().filter(|g| !g.is_zero()).collect();
    if d % p == 0 {
        gens.push(poly.clone());
    }
    if gens.is_empty() {
        return Ok(false);
    }
    let delta = gens.iter().map(|g| g.degree()).max().unwrap();
    let big_d = ((nv as u64) * (delta.max(1) - 1) + 1).max(delta);
    spans_degree(field, nv, &gens, big_d)
}

/// Macaulay resultant of `n + 1` forms in `n + 1` variables, as the
/// quotient of the Macaulay matrix determinant by its extraneous minor.
/// Normalized so that `Res(x_0^{d_0}, ..., x_n^{d_n}) = 1`.
pub fn macaulay_resultant(forms: &[HomogPoly]) -> Result<Elem, AnalysisError> {
    let Some(first) = forms.first() else {
        return Err(AnalysisError::InvalidParameters("no forms given".into()));
    };
    let nv = first.nvars();
    let field = first.field().clone();
    if forms.len() != nv {
        return Err(AnalysisError::InvalidParameters(format!(
            "{} forms in {} variables",
            forms.len(),
            nv
        )));
    }
    for g in forms {
        if g.nvars() != nv || g.field() != &field {
            return Err(AnalysisError::InvalidParameters("forms disagree on ring".into()));
        }
        if g.degree() == 0 {
            return Err(AnalysisError::InvalidParameters("degree 0 form".into()));
        }
    }
    let degs: Vec<u32> = forms.iter().map(|g| g.degree() as u32).collect();
    let big_d: u32 = degs.iter().map(|d| d - 1).sum::<u32>() + 1;
    let ms = monomials_of_degree(nv, big_d);
    let idx = index_of(&ms);
    let size = ms.len();
    if size * size > MAX_MACAULAY_ENTRIES {
        return Err(AnalysisError::UncertifiableCase(format!(
            "Macaulay matrix of size {size} exceeds the cap"
        )));
    }
    let mut m = Matrix::zeros(&field, size, size);
    let mut nonreduced = Vec::new();
    for (r, mono) in ms.iter().enumerate() {
        let e = mono.exps();
        let divisible: Vec<usize> = (0..nv).filter(|&i| e[i] >= degs[i]).collect();
        if divisible.len() >= 2 {
            nonreduced.push(r);
        }
        let i = divisible[0];
        let mut shift = e.to_vec();
        shift[i] -= degs[i];
        let shift = Monomial::new(&shift);
        for (t, &c) in forms[i].terms() {
            m.set(r, idx[&t.mul(&shift)], c);
        }
    }
    let det = m.det();
    let minor = if nonreduced.is_empty() {
        Elem::ONE
    } else {
        let rows: Vec<Vec<Elem>> = nonreduced
            .iter()
            .map(|&r| nonreduced.iter().map(|&c| m.get(r, c)).collect())
            .collect();
        Matrix::from_rows(&field, &rows).det()
    };
    if minor.is_zero() {
        return Err(AnalysisError::DegenerateMatrixConstruction);
    }
    Ok(field.div(det, minor)?)
}

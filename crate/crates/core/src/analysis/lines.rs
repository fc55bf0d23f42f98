//! Lines against hypersurfaces: restrictions, intersection profiles,
//! transversality, and blocking sets.

use std::collections::HashSet;

use serde_json::{json, Value};

use super::bounds::{exact_sqrt, BoundCheck, BoundKind};
use super::AnalysisError;
use crate::gf::{Elem, Field};
use crate::mpoly::{Evaluator, HomogPoly};
use crate::projgeom::{
    enumerate_hyperplanes, enumerate_lines, enumerate_points, point_count, unrank_point,
    Hyperplane, ProjLine,
};

/// `F` restricted to `L`, as a binary form in the line parameters `(s, t)`.
pub fn restrict_to_line(poly: &HomogPoly, line: &ProjLine) -> Result<HomogPoly, AnalysisError> {
    Ok(poly.substitute_linear(&line.parametrization(), 2)?)
}

/// A closed point of `X ∩ L`: its field of definition has degree `degree`
/// over `F_q`, and it occurs with intersection multiplicity `multiplicity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntersectionPoint {
    pub degree: u32,
    pub multiplicity: u32,
}

/// The closed points of `X ∩ L`, from the factorization of the restricted
/// binary form over `F_q`. Sorted by degree, then multiplicity.
pub fn fq_line_intersection_profile(
    poly: &HomogPoly,
    line: &ProjLine,
) -> Result<Vec<IntersectionPoint>, AnalysisError> {
    let r = restrict_to_line(poly, line)?;
    if r.is_zero() {
        return Err(AnalysisError::LineContained);
    }
    Ok(binary_profile(&r))
}

pub(crate) fn binary_profile(r: &HomogPoly) -> Vec<IntersectionPoint> {
    let g = r.dehomogenize_binary().expect("binary form");
    let deg = g.degree().unwrap_or(0) as u64;
    let mut out = Vec::new();
    if r.degree() > deg {
        out.push(IntersectionPoint {
            degree: 1,
            multiplicity: (r.degree() - deg) as u32,
        });
    }
    if deg > 0 {
        for (pi, e) in g.factor() {
            out.push(IntersectionPoint {
                degree: pi.degree().unwrap() as u32,
                multiplicity: e,
            });
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineClass {
    Contained,
    Transverse,
    /// Tangent somewhere or through a singular point.
    NonTransverse,
}

impl LineClass {
    pub fn name(&self) -> &'static str {
        match self {
            LineClass::Contained => "contained",
            LineClass::Transverse => "transverse",
            LineClass::NonTransverse => "tangent_or_singular",
        }
    }
}

pub fn classify_line(poly: &HomogPoly, line: &ProjLine) -> Result<LineClass, AnalysisError> {
    let r = restrict_to_line(poly, line)?;
    if r.is_zero() {
        return Ok(LineClass::Contained);
    }
    Ok(if r.binary_squarefree()? {
        LineClass::Transverse
    } else {
        LineClass::NonTransverse
    })
}

#[derive(Clone, Debug)]
pub struct LineIncidenceReport {
    pub lines: Vec<(ProjLine, LineClass)>,
    pub contained: u64,
    pub transverse: u64,
    pub non_transverse: u64,
    /// Non-transverse (contained or not) against both line-count bounds.
    pub bounds: Vec<BoundCheck>,
}

impl LineIncidenceReport {
    pub fn total(&self) -> u64 {
        self.contained + self.transverse + self.non_transverse
    }

    pub fn to_json(&self, with_lines: bool) -> Value {
        let mut v = json!({
            "contained": self.contained,
            "transverse": self.transverse,
            "tangent_or_singular": self.non_transverse,
            "total": self.total(),
            "bounds": self.bounds.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
        });
        if with_lines {
            v["lines"] = self
                .lines
                .iter()
                .map(|(l, c)| json!({"line": l.to_string(), "class": c.name()}))
                .collect();
        }
        v
    }
}

/// Classifies every `F_q`-line against the plane curve `C`. The bounds are
/// marked as applying only when `irreducible` / `reduced` are asserted by
/// the caller together with smoothness at rational points.
pub fn line_incidence(
    poly: &HomogPoly,
    geometrically_irreducible: bool,
    reduced: bool,
) -> Result<LineIncidenceReport, AnalysisError> {
    if poly.nvars() != 3 {
        return Err(AnalysisError::NotAPlaneCurve(poly.nvars() - 1));
    }
    let mut lines = Vec::new();
    let (mut c, mut t, mut o) = (0, 0, 0);
    for l in enumerate_lines(2, poly.field()) {
        let cls = classify_line(poly, &l)?;
        match cls {
            LineClass::Contained => c += 1,
            LineClass::Transverse => t += 1,
            LineClass::NonTransverse => o += 1,
        }
        lines.push((l, cls));
    }
    let d = poly.degree() as u32;
    let q = poly.field().order() as u64;
    let nt = c + o;
    let bounds = vec![
        BoundCheck::new(BoundKind::NonTransverseIrreducible { d, q }, false, nt, geometrically_irreducible)?,
        BoundCheck::new(BoundKind::NonTransverseReduced { d, q }, false, nt, reduced)?,
    ];
    Ok(LineIncidenceReport {
        lines,
        contained: c,
        transverse: t,
        non_transverse: o,
        bounds,
    })
}

#[derive(Clone, Debug)]
pub struct BlockingReport {
    pub point_count: u64,
    pub blocking: bool,
    /// An `F_q`-line missing `X(F_q)`, if any.
    pub missed_line: Option<ProjLine>,
    pub nontrivial: bool,
    /// A hyperplane whose `F_q`-points all lie on `X`, if any.
    pub full_hyperplane: Option<Hyperplane>,
    pub heim: Option<BoundCheck>,
}

impl BlockingReport {
    pub fn to_json(&self) -> Value {
        json!({
            "point_count": self.point_count,
            "blocking": self.blocking,
            "missed_line": self.missed_line.as_ref().map(|l| l.to_string()),
            "nontrivial": self.nontrivial,
            "full_hyperplane": self.full_hyperplane.as_ref().map(|h| h.dual().to_string()),
            "heim": self.heim.as_ref().map(|b| b.to_json()),
        })
    }
}

fn rational_zeros(poly: &HomogPoly) -> Result<HashSet<Vec<Elem>>, AnalysisError> {
    let f: &Field = poly.field();
    let ev = Evaluator::new(poly, f)?;
    let n = poly.nvars() - 1;
    let q = f.order() as u64;
    let mut out = HashSet::new();
    for i in 0..point_count(n, q) {
        let mut x = vec![Elem::ZERO; n + 1];
        unrank_point(q, i, &mut x);
        if ev.eval(&x).is_zero() {
            out.insert(x);
        }
    }
    Ok(out)
}

/// Whether `F` has a factor that is a linear form over `F_q`.
pub fn has_rational_linear_component(poly: &HomogPoly) -> Result<bool, AnalysisError> {
    let n = poly.nvars() - 1;
    for h in enumerate_hyperplanes(n, poly.field()) {
        if h.as_form().divides(poly)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Hypotheses of the blocking-set statement: Frobenius nonclassical,
/// `q != 2`, `d <= q`, `p` not dividing `d`, no `F_q`-linear component.
pub fn blocking_hypotheses(poly: &HomogPoly) -> Result<bool, AnalysisError> {
    let f = poly.field();
    let q = f.order() as u64;
    let d = poly.degree();
    if q == 2 || d > q || d % f.characteristic() as u64 == 0 {
        return Ok(false);
    }
    if !crate::frobcore::is_frobenius_nonclassical(poly, q)?.nonclassical {
        return Ok(false);
    }
    Ok(!has_rational_linear_component(poly)?)
}

/// Whether `X(F_q)` meets every `F_q`-line, whether it avoids containing
/// the `F_q`-points of a whole hyperplane, and Heim's bound for square `q`.
pub fn blocking_verdict(poly: &HomogPoly) -> Result<BlockingReport, AnalysisError> {
    let field = poly.field();
    let n = poly.nvars() - 1;
    let zeros = rational_zeros(poly)?;
    let missed_line = enumerate_lines(n, field)
        .into_iter()
        .find(|l| !l.points().iter().any(|p| zeros.contains(p.coords())));
    let pts = enumerate_points(n, field);
    let per_hyperplane = point_count(n - 1, field.order() as u64);
    let full_hyperplane = enumerate_hyperplanes(n, field).into_iter().find(|h| {
        let on = pts
            .iter()
            .filter(|p| {
                let s = p.coords().iter().zip(h.coeffs()).fold(Elem::ZERO, |acc, (&a, &b)| {
                    field.add(acc, field.mul(a, b))
                });
                s.is_zero() && zeros.contains(p.coords())
            })
            .count() as u64;
        on == per_hyperplane
    });
    let q = field.order() as u64;
    let count = zeros.len() as u64;
    let heim = if exact_sqrt(q).is_some() && n >= 2 {
        let applies = blocking_hypotheses(poly)?;
        Some(BoundCheck::new(BoundKind::Heim { n: n as u32, q }, true, count, applies)?)
    } else {
        None
    };
    Ok(BlockingReport {
        point_count: count,
        blocking: missed_line.is_none(),
        missed_line,
        nontrivial: full_hyperplane.is_none(),
        full_hyperplane,
        heim,
    })
}

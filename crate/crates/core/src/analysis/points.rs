//! Rational point counts and the bounds they are compared against.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::bounds::{BoundCheck, BoundKind};
use super::{ext_field, AnalysisError};
use crate::gf::Elem;
use crate::mpoly::{Evaluator, HomogPoly};
use crate::projgeom::{point_count, unrank_point};

/// Exact `#X(F_{q^m})` where `F_q` is the coefficient field of `F`.
pub fn count_points(poly: &HomogPoly, m: u32) -> Result<u64, AnalysisError> {
    let ext = ext_field(poly.field(), m)?;
    count_points_in_range(poly, m, 0..point_count(poly.nvars() - 1, ext.order() as u64))
}

/// Number of zeros among the points with enumeration index in `range`.
pub fn count_points_in_range(
    poly: &HomogPoly,
    m: u32,
    range: std::ops::Range<u64>,
) -> Result<u64, AnalysisError> {
    let ext = ext_field(poly.field(), m)?;
    let ev = Evaluator::new(poly, &ext)?;
    let n = poly.nvars() - 1;
    let q = ext.order() as u64;
    Ok(range
        .into_par_iter()
        .filter(|&i| {
            let mut x = vec![Elem::ZERO; n + 1];
            unrank_point(q, i, &mut x);
            ev.eval(&x).is_zero()
        })
        .count() as u64)
}

/// Hypotheses established elsewhere, deciding which bounds apply.
#[derive(Clone, Copy, Debug, Default)]
pub struct KnownProperties {
    pub frobenius_nonclassical: bool,
    pub reduced: bool,
    pub smooth_at_rational: bool,
    pub smooth: bool,
    pub no_rational_linear_component: bool,
}

#[derive(Clone, Debug)]
pub struct PointCountReport {
    pub counts: Vec<(u32, u64)>,
    pub ambient: u64,
    pub space_filling: bool,
    pub pointless: bool,
    pub bounds: Vec<BoundCheck>,
}

impl PointCountReport {
    pub fn to_json(&self) -> Value {
        json!({
            "counts": self.counts.iter().map(|(m, c)| json!({"m": m, "count": c})).collect::<Vec<_>>(),
            "ambient": self.ambient,
            "space_filling": self.space_filling,
            "pointless": self.pointless,
            "bounds": self.bounds.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Counts over `F_{q^m}` for each `m` in `exts` (1 is always included) and
/// compares `#X(F_q)` with the bounds whose hypotheses `known` asserts.
pub fn point_count_report(
    poly: &HomogPoly,
    exts: &[u32],
    known: KnownProperties,
) -> Result<PointCountReport, AnalysisError> {
    let mut ms: Vec<u32> = exts.to_vec();
    ms.push(1);
    ms.sort_unstable();
    ms.dedup();
    let counts = ms
        .iter()
        .map(|&m| Ok((m, count_points(poly, m)?)))
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    let n = poly.nvars() - 1;
    let q = poly.field().order() as u64;
    let d = poly.degree() as u32;
    let c1 = counts[0].1;
    let ambient = point_count(n, q);
    let mut bounds = Vec::new();
    if n >= 1 && (d as u64) <= q + 1 {
        bounds.push(BoundCheck::new(
            BoundKind::SerreSorensen { n: n as u32, d, q },
            false,
            c1,
            true,
        )?);
    }
    let fnc = known.frobenius_nonclassical;
    if n == 2 && (d as u64) <= q + 1 {
        bounds.push(BoundCheck::new(
            BoundKind::CurveLower { d, q },
            true,
            c1,
            fnc && known.reduced && known.smooth_at_rational,
        )?);
    }
    if n == 3 {
        if (d as u64) <= q + 1 {
            bounds.push(BoundCheck::new(
                BoundKind::SurfaceLower { d, q },
                true,
                c1,
                fnc && known.smooth,
            )?);
        }
        bounds.push(BoundCheck::new(
            BoundKind::HommaKimSurface { d, q },
            false,
            c1,
            known.no_rational_linear_component,
        )?);
    }
    Ok(PointCountReport {
        space_filling: c1 == ambient,
        pointless: c1 == 0,
        counts,
        ambient,
        bounds,
    })
}

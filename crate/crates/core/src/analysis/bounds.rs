//! Closed-form bounds on point and line counts, in exact arithmetic.

use num_rational::Ratio;

use super::AnalysisError;

pub type Q = Ratio<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// `#X(F_q) <= d q^{n-1} + q^{n-2} + ... + q + 1`.
    SerreSorensen { n: u32, d: u32, q: u64 },
    /// `#X(F_q) <= (d - 1) q^2 + d q + 1` for surfaces without `F_q`-planes.
    HommaKimSurface { d: u32, q: u64 },
    /// `#C(F_q) >= d (q - d + 2)`.
    CurveLower { d: u32, q: u64 },
    /// `#X(F_q) >= (q^3+q^2+q+1) d (q-d+2) / ((q^2+q) + d (q-d+2))`.
    SurfaceLower { d: u32, q: u64 },
    /// `q^{n-1} (q - d + 1)`.
    GoodHyperplanes { n: u32, d: u32, q: u64 },
    /// Least degree `d` with `d >= p + 1` and `d >= sqrt(q) + 1`.
    DegreeCorridor { p: u32, q: u64 },
    /// Heim: `(q^n - 1)/(q - 1) + sqrt(q) q^{n-2}`, `q` a square.
    Heim { n: u32, q: u64 },
    /// Non-transverse lines to a geometrically irreducible curve:
    /// `(d-1)(d-2)/2 + d(d-1) q + 1`.
    NonTransverseIrreducible { d: u32, q: u64 },
    /// Non-transverse lines to a reduced curve: `d^2/2 + q d^2 - q d + d/2`.
    NonTransverseReduced { d: u32, q: u64 },
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::SerreSorensen { .. } => "serre-sorensen",
            BoundKind::HommaKimSurface { .. } => "homma-kim-surface",
            BoundKind::CurveLower { .. } => "curve-lower",
            BoundKind::SurfaceLower { .. } => "surface-lower",
            BoundKind::GoodHyperplanes { .. } => "good-hyperplanes",
            BoundKind::DegreeCorridor { .. } => "degree-corridor",
            BoundKind::Heim { .. } => "heim",
            BoundKind::NonTransverseIrreducible { .. } => "non-transverse-irreducible",
            BoundKind::NonTransverseReduced { .. } => "non-transverse-reduced",
        }
    }

    pub fn formula(&self) -> &'static str {
        match self {
            BoundKind::SerreSorensen { .. } => "d q^(n-1) + q^(n-2) + ... + q + 1",
            BoundKind::HommaKimSurface { .. } => "(d-1) q^2 + d q + 1",
            BoundKind::CurveLower { .. } => "d (q - d + 2)",
            BoundKind::SurfaceLower { .. } => {
                "(q^3+q^2+q+1) d (q-d+2) / ((q^2+q) + d (q-d+2))"
            }
            BoundKind::GoodHyperplanes { .. } => "q^(n-1) (q - d + 1)",
            BoundKind::DegreeCorridor { .. } => "max(p + 1, sqrt(q) + 1)",
            BoundKind::Heim { .. } => "(q^n - 1)/(q - 1) + sqrt(q) q^(n-2)",
            BoundKind::NonTransverseIrreducible { .. } => "(d-1)(d-2)/2 + d(d-1) q + 1",
            BoundKind::NonTransverseReduced { .. } => "d^2/2 + q d^2 - q d + d/2",
        }
    }
}

fn int(v: i128) -> Q {
    Q::from_integer(v)
}

fn bad(msg: &str) -> AnalysisError {
    AnalysisError::InvalidParameters(msg.to_string())
}

fn pow(q: u64, e: u32) -> Result<i128, AnalysisError> {
    (q as i128).checked_pow(e).ok_or_else(|| bad("value overflows"))
}

/// Exact integer square root if `q` is a perfect square.
pub fn exact_sqrt(q: u64) -> Option<u64> {
    let r = (q as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s * s == q)
}

pub fn bounds_calculator(kind: BoundKind) -> Result<Q, AnalysisError> {
    match kind {
        BoundKind::SerreSorensen { n, d, q } => {
            if n == 0 || q < 2 {
                return Err(bad("need n >= 1 and q >= 2"));
            }
            let mut v = d as i128 * pow(q, n - 1)?;
            for e in 0..n.saturating_sub(1) {
                v += pow(q, e)?;
            }
            Ok(int(v))
        }
        BoundKind::HommaKimSurface { d, q } => {
            let (d, q) = (d as i128, q as i128);
            Ok(int((d - 1) * q * q + d * q + 1))
        }
        BoundKind::CurveLower { d, q } => {
            let (d, q) = (d as i128, q as i128);
            Ok(int(d * (q - d + 2)))
        }
        BoundKind::SurfaceLower { d, q } => {
            let (d, q) = (d as i128, q as i128);
            let num = (q * q * q + q * q + q + 1) * d * (q - d + 2);
            let den = (q * q + q) + d * (q - d + 2);
            if den == 0 {
                return Err(bad("denominator vanishes"));
            }
            Ok(Q::new(num, den))
        }
        BoundKind::GoodHyperplanes { n, d, q } => {
            if n == 0 {
                return Err(bad("need n >= 1"));
            }
            Ok(int(pow(q, n - 1)? * (q as i128 - d as i128 + 1)))
        }
        BoundKind::DegreeCorridor { p, q } => {
            if p < 2 || q < 2 {
                return Err(bad("need p, q >= 2"));
            }
            let mut d = p as i128 + 1;
            while (d - 1) * (d - 1) < q as i128 {
                d += 1;
            }
            Ok(int(d))
        }
        BoundKind::Heim { n, q } => {
            let s = exact_sqrt(q).ok_or_else(|| bad("q must be a square"))?;
            if n < 2 {
                return Err(bad("need n >= 2"));
            }
            let base = Q::new(pow(q, n)? - 1, q as i128 - 1);
            Ok(base + int(s as i128 * pow(q, n - 2)?))
        }
        BoundKind::NonTransverseIrreducible { d, q } => {
            let (d, q) = (d as i128, q as i128);
            Ok(Q::new((d - 1) * (d - 2), 2) + int(d * (d - 1) * q + 1))
        }
        BoundKind::NonTransverseReduced { d, q } => {
            let (d, q) = (d as i128, q as i128);
            Ok(Q::new(d * d, 2) + int(q * d * d - q * d) + Q::new(d, 2))
        }
    }
}

/// A bound evaluated against an observed count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub formula: &'static str,
    pub value: Q,
    /// `true` for lower bounds (`observed >= value`).
    pub lower: bool,
    pub observed: u64,
    pub satisfied: bool,
    /// Whether the hypotheses of the bound were verified for this input.
    pub applies: bool,
}

impl BoundCheck {
    pub fn new(kind: BoundKind, lower: bool, observed: u64, applies: bool) -> Result<Self, AnalysisError> {
        let value = bounds_calculator(kind)?;
        let obs = int(observed as i128);
        Ok(BoundCheck {
            name: kind.name(),
            formula: kind.formula(),
            value,
            lower,
            observed,
            satisfied: if lower { obs >= value } else { obs <= value },
            applies,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "formula": self.formula,
            "value": self.value.to_string(),
            "relation": if self.lower { ">=" } else { "<=" },
            "observed": self.observed,
            "satisfied": self.satisfied,
            "applies": self.applies,
        })
    }
}

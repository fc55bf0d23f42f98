//! Exhaustive census of hypersurfaces of fixed degree over a small field.
//!
//! Candidates are the nonzero coefficient vectors whose first nonzero entry
//! is 1, with coefficients listed in decreasing grevlex order (the printing
//! order). The `i`-th candidate is the `i`-th normalized vector of
//! [`unrank_point`]. Shards are contiguous index ranges, so concatenating
//! the shards `0/N, ..., (N-1)/N` reproduces the unsharded stream.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::lines::has_rational_linear_component;
use super::points::count_points;
use super::smooth::{best_smoothness, singular_points, SmoothnessVerdict};
use super::structure::{normal_form_match, separated_variables_detect, NormalFormClause};
use super::AnalysisError;
use crate::frobcore::{is_frobenius_nonclassical, F10Kind};
use crate::gf::{Elem, Field};
use crate::mpoly::{format_elem_literal, monomials_of_degree, HomogPoly, Monomial};
use crate::projgeom::unrank_point;

/// Candidates allowed in one run (or one shard) by default.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// Extension degree searched when a smoothness certificate is too large.
const FALLBACK_EXTENSION: u32 = 3;

const CHUNK: u64 = 1 << 14;

/// Filters, applied in the declaration order below (cheap first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CensusFilter {
    Fn,
    NotPthPower,
    Reduced,
    NoLinearComponent,
    SmoothAtRational,
    Smooth,
}

impl CensusFilter {
    pub fn name(&self) -> &'static str {
        match self {
            CensusFilter::Fn => "fn",
            CensusFilter::NotPthPower => "not-pth-power",
            CensusFilter::Reduced => "reduced",
            CensusFilter::NoLinearComponent => "no-linear-component",
            CensusFilter::SmoothAtRational => "smooth-at-rational",
            CensusFilter::Smooth => "smooth",
        }
    }

    /// Parses a comma-separated list, returned sorted and deduplicated.
    pub fn parse_list(s: &str) -> Result<Vec<CensusFilter>, AnalysisError> {
        let mut out = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(CensusFilter::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for CensusFilter {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.replace('_', "-").as_str() {
            "fn" => CensusFilter::Fn,
            "not-pth-power" => CensusFilter::NotPthPower,
            "reduced" => CensusFilter::Reduced,
            "no-linear-component" => CensusFilter::NoLinearComponent,
            "smooth-at-rational" => CensusFilter::SmoothAtRational,
            "smooth" => CensusFilter::Smooth,
            other => return Err(AnalysisError::InvalidParameters(format!("unknown filter {other}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub index: u64,
    pub total: u64,
}

impl Shard {
    pub const WHOLE: Shard = Shard { index: 0, total: 1 };
}

impl FromStr for Shard {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AnalysisError::BadShard(s.to_string());
        let (i, n) = s.split_once('/').ok_or_else(bad)?;
        let index: u64 = i.trim().parse().map_err(|_| bad())?;
        let total: u64 = n.trim().parse().map_err(|_| bad())?;
        if total == 0 || index >= total {
            return Err(bad());
        }
        Ok(Shard { index, total })
    }
}

impl fmt::Display for Shard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.total)
    }
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub field: Field,
    pub n: usize,
    pub d: u32,
    pub filters: Vec<CensusFilter>,
    pub shard: Shard,
    pub budget: u64,
}

impl CensusConfig {
    pub fn new(field: &Field, n: usize, d: u32, filters: &[CensusFilter]) -> Self {
        let mut filters = filters.to_vec();
        filters.sort();
        filters.dedup();
        CensusConfig {
            field: field.clone(),
            n,
            d,
            filters,
            shard: Shard::WHOLE,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_shard(mut self, shard: Shard) -> Self {
        self.shard = shard;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Number of monomials, i.e. the length of a coefficient vector.
    pub fn num_coeffs(&self) -> usize {
        monomials_of_degree(self.n + 1, self.d).len()
    }

    /// `(q^N - 1) / (q - 1)`, saturating.
    pub fn total_candidates(&self) -> u128 {
        let q = self.field.order() as u128;
        let mut t: u128 = 0;
        let mut pw: u128 = 1;
        for _ in 0..self.num_coeffs() {
            t = t.saturating_add(pw);
            pw = pw.saturating_mul(q);
        }
        t
    }

    /// The index range covered by this shard.
    pub fn range(&self) -> Result<std::ops::Range<u64>, AnalysisError> {
        let total = self.total_candidates();
        let lo = total * self.shard.index as u128 / self.shard.total as u128;
        let hi = total * (self.shard.index + 1) as u128 / self.shard.total as u128;
        if hi - lo > self.budget as u128 || hi > u64::MAX as u128 {
            return Err(AnalysisError::BudgetExceeded {
                candidates: hi - lo,
                budget: self.budget as u128,
            });
        }
        Ok(lo as u64..hi as u64)
    }
}

/// One census hit. Every flag is a function of the coefficient vector.
#[derive(Clone, Debug)]
pub struct CensusRecord {
    pub index: u64,
    pub field: Field,
    pub n: usize,
    pub d: u32,
    pub coeffs: Vec<Elem>,
    pub poly: HomogPoly,
    pub fn_: bool,
    pub f10_kind: F10Kind,
    pub pth_power: bool,
    pub smooth_at_rational: bool,
    pub smooth: SmoothnessVerdict,
    pub point_count: u64,
    pub space_filling: bool,
    pub separated_variables: bool,
    pub normal_forms: Vec<NormalFormClause>,
}

impl CensusRecord {
    /// Flag names that are true, in a fixed order.
    pub fn flag_key(&self) -> String {
        let mut v = Vec::new();
        if self.fn_ {
            v.push("fn".to_string());
        }
        if self.smooth_at_rational {
            v.push("smooth_at_rational".into());
        }
        if self.smooth.smooth {
            v.push("smooth".into());
        }
        if self.space_filling {
            v.push("space_filling".into());
        }
        if self.point_count == 0 {
            v.push("pointless".into());
        }
        if self.separated_variables {
            v.push("separated_variables".into());
        }
        for c in &self.normal_forms {
            v.push(format!("normal_form:{}", c.name()));
        }
        if v.is_empty() {
            "none".into()
        } else {
            v.join("+")
        }
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        json!({
            "index": self.index,
            "field": f.header(),
            "n": self.n,
            "d": self.d,
            "coeffs": self.coeffs.iter().map(|&c| format_elem_literal(f, c)).collect::<Vec<_>>(),
            "poly": self.poly.to_string(),
            "fn": self.fn_,
            "f10_kind": self.f10_kind.name(),
            "pth_power": self.pth_power,
            "smooth_at_rational": self.smooth_at_rational,
            "smooth": self.smooth.to_json(),
            "point_count": self.point_count,
            "space_filling": self.space_filling,
            "separated_variables": self.separated_variables,
            "normal_form": self.normal_forms.iter().map(|c| c.name()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct CensusSummary {
    pub field: String,
    pub n: usize,
    pub d: u32,
    pub filters: Vec<CensusFilter>,
    pub shard: Shard,
    pub candidates: u64,
    pub hits: u64,
    pub by_flags: BTreeMap<String, u64>,
}

impl CensusSummary {
    pub fn to_json(&self) -> Value {
        json!({
            "summary": {
                "field": self.field,
                "n": self.n,
                "d": self.d,
                "filters": self.filters.iter().map(|f| f.name()).collect::<Vec<_>>(),
                "filter_order": "fn, not-pth-power, reduced, no-linear-component, smooth-at-rational, smooth",
                "shard": self.shard.to_string(),
                "candidates": self.candidates,
                "hits": self.hits,
                "by_flags": self.by_flags,
                "normalization": "first nonzero coefficient 1; no projective-equivalence deduplication",
            }
        })
    }
}

/// Summary of a record stream, as merged shard outputs would give it.
pub fn census_summary(config: &CensusConfig, candidates: u64, records: &[CensusRecord]) -> CensusSummary {
    let mut by_flags = BTreeMap::new();
    for r in records {
        *by_flags.entry(r.flag_key()).or_insert(0) += 1;
    }
    CensusSummary {
        field: config.field.header(),
        n: config.n,
        d: config.d,
        filters: config.filters.clone(),
        shard: config.shard,
        candidates,
        hits: records.len() as u64,
        by_flags,
    }
}

/// Dense tables for the divisibility test `F | F_{1,0}`.
struct FnTables {
    field: Field,
    p: u32,
    /// Monomials of degree `d`, decreasing grevlex.
    mons: Vec<Monomial>,
    /// `(j, target, factor)`: `x_i^q dF/dx_i` sends coefficient `j` to
    /// `target` (index in degree `d + q - 1`) times `factor`.
    f10: Vec<(usize, usize, Elem)>,
    big_len: usize,
    /// `mul[u][j]`: index of (quotient monomial `u`) times (monomial `j`).
    mul: Vec<Vec<usize>>,
    /// `div[l][r]`: quotient monomial `u` with `u * mons[r] = big[l]`.
    div: Vec<Vec<Option<usize>>>,
}

impl FnTables {
    fn new(field: &Field, n: usize, d: u32) -> Self {
        let q = field.order();
        let p = field.characteristic();
        let nv = n + 1;
        let mut mons = monomials_of_degree(nv, d);
        mons.reverse();
        let mut big = monomials_of_degree(nv, d + q - 1);
        big.reverse();
        let mut quo = monomials_of_degree(nv, q - 1);
        quo.reverse();
        let big_idx: std::collections::HashMap<Monomial, usize> =
            big.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut f10 = Vec::new();
        for (j, m) in mons.iter().enumerate() {
            for i in 0..nv {
                let e = m.exps()[i];
                if e % p == 0 {
                    continue;
                }
                let mut t = m.exps().to_vec();
                t[i] += q - 1;
                f10.push((j, big_idx[&Monomial::new(&t)], field.from_int((e % p) as i64)));
            }
        }
        let mul: Vec<Vec<usize>> = quo
            .iter()
            .map(|u| mons.iter().map(|m| big_idx[&u.mul(m)]).collect())
            .collect();
        let mut div = vec![vec![None; mons.len()]; big.len()];
        for (u, row) in mul.iter().enumerate() {
            for (r, &l) in row.iter().enumerate() {
                div[l][r] = Some(u);
            }
        }
        FnTables {
            field: field.clone(),
            p,
            mons,
            f10,
            big_len: big.len(),
            mul,
            div,
        }
    }

    /// Decides `F | F_{1,0}` for a vector with leading coefficient 1 at the
    /// first nonzero position.
    fn is_fn(&self, c: &[Elem], rem: &mut Vec<Elem>) -> bool {
        let f = &self.field;
        rem.clear();
        rem.resize(self.big_len, Elem::ZERO);
        for &(j, t, k) in &self.f10 {
            if !c[j].is_zero() {
                rem[t] = f.add(rem[t], f.mul(k, c[j]));
            }
        }
        let r = c.iter().position(|e| !e.is_zero()).expect("nonzero vector");
        let lc_inv = f.inv(c[r]).expect("nonzero");
        let support: Vec<usize> = (r..c.len()).filter(|&j| !c[j].is_zero()).collect();
        for l in 0..self.big_len {
            let v = rem[l];
            if v.is_zero() {
                continue;
            }
            let Some(u) = self.div[l][r] else {
                return false;
            };
            let s = f.mul(v, lc_inv);
            let row = &self.mul[u];
            for &j in &support {
                let t = row[j];
                rem[t] = f.sub(rem[t], f.mul(s, c[j]));
            }
        }
        true
    }

    fn is_pth_power(&self, c: &[Elem]) -> bool {
        c.iter()
            .zip(&self.mons)
            .all(|(e, m)| e.is_zero() || m.exps().iter().all(|&x| x % self.p == 0))
    }

    fn poly(&self, c: &[Elem], nv: usize, d: u32) -> HomogPoly {
        let terms: Vec<(Monomial, Elem)> = self
            .mons
            .iter()
            .cloned()
            .zip(c.iter().copied())
            .filter(|(_, e)| !e.is_zero())
            .collect();
        HomogPoly::from_terms(&self.field, nv, d as u64, terms).expect("homogeneous by construction")
    }
}

/// Computes the full record for one candidate, or `None` if a filter
/// rejects it.
fn evaluate(
    config: &CensusConfig,
    tables: &FnTables,
    index: u64,
    coeffs: Vec<Elem>,
    fn_: bool,
) -> Result<Option<CensusRecord>, AnalysisError> {
    let nv = config.n + 1;
    let poly = tables.poly(&coeffs, nv, config.d);
    let has = |f: CensusFilter| config.filters.contains(&f);
    let pth_power = tables.is_pth_power(&coeffs);
    if has(CensusFilter::NotPthPower) && pth_power {
        return Ok(None);
    }
    if has(CensusFilter::Reduced) && !poly.is_reduced()? {
        return Ok(None);
    }
    if has(CensusFilter::NoLinearComponent) && has_rational_linear_component(&poly)? {
        return Ok(None);
    }
    let smooth_at_rational = singular_points(&poly, 1)?.is_empty();
    if has(CensusFilter::SmoothAtRational) && !smooth_at_rational {
        return Ok(None);
    }
    let smooth = best_smoothness(&poly, FALLBACK_EXTENSION)?;
    if has(CensusFilter::Smooth) && !smooth.smooth {
        return Ok(None);
    }
    let q = config.field.order() as u64;
    let f10_kind = is_frobenius_nonclassical(&poly, q)?.kind;
    let point_count = count_points(&poly, 1)?;
    let ambient = crate::projgeom::point_count(config.n, q);
    let normal_forms = NormalFormClause::all()
        .into_iter()
        .filter(|&c| matches!(normal_form_match(&poly, c), Ok(v) if v.matched))
        .collect();
    Ok(Some(CensusRecord {
        index,
        field: config.field.clone(),
        n: config.n,
        d: config.d,
        separated_variables: separated_variables_detect(&poly).is_some(),
        coeffs,
        poly,
        fn_,
        f10_kind,
        pth_power,
        smooth_at_rational,
        smooth,
        point_count,
        space_filling: point_count == ambient,
        normal_forms,
    }))
}

/// Runs the census over the configured shard, handing each hit to `sink`
/// in index order. Returns the summary.
pub fn census(
    config: &CensusConfig,
    mut sink: impl FnMut(&CensusRecord),
) -> Result<CensusSummary, AnalysisError> {
    if config.d == 0 {
        return Err(AnalysisError::InvalidParameters("degree must be positive".into()));
    }
    let range = config.range()?;
    let q = config.field.order() as u64;
    let tables = FnTables::new(&config.field, config.n, config.d);
    let ncoeffs = tables.mons.len();
    let want_fn = config.filters.contains(&CensusFilter::Fn);
    let mut by_flags = BTreeMap::new();
    let mut hits = 0u64;
    let mut start = range.start;
    let batch = CHUNK * 64;
    while start < range.end {
        let end = (start + batch).min(range.end);
        let chunks: Vec<(u64, u64)> = (start..end)
            .step_by(CHUNK as usize)
            .map(|s| (s, (s + CHUNK).min(end)))
            .collect();
        let results: Vec<Result<Vec<CensusRecord>, AnalysisError>> = chunks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut out = Vec::new();
                let mut c = vec![Elem::ZERO; ncoeffs];
                let mut rem = Vec::new();
                for i in lo..hi {
                    unrank_point(q, i, &mut c);
                    let fn_ = tables.is_fn(&c, &mut rem);
                    if want_fn && !fn_ {
                        continue;
                    }
                    if let Some(r) = evaluate(config, &tables, i, c.clone(), fn_)? {
                        out.push(r);
                    }
                }
                Ok(out)
            })
            .collect();
        for res in results {
            for r in res? {
                hits += 1;
                *by_flags.entry(r.flag_key()).or_insert(0) += 1;
                sink(&r);
            }
        }
        start = end;
    }
    Ok(CensusSummary {
        field: config.field.header(),
        n: config.n,
        d: config.d,
        filters: config.filters.clone(),
        shard: config.shard,
        candidates: range.end - range.start,
        hits,
        by_flags,
    })
}

/// All hits of the census, collected.
pub fn census_records(config: &CensusConfig) -> Result<(Vec<CensusRecord>, CensusSummary), AnalysisError> {
    let mut v = Vec::new();
    let s = census(config, |r| v.push(r.clone()))?;
    Ok((v, s))
}

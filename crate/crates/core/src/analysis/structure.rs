//! Structural recognizers: separated variables, the normal forms of the
//! degree `q + 1` and `q + 2` classifications, and the divisibility lemma
//! behind the separated-variables congruence.

use serde_json::{json, Value};

use super::AnalysisError;
use crate::frobcore::{as_frobenius_form, compute_fab};
use crate::gf::{Elem, Field, Matrix};
use crate::mpoly::{HomogPoly, Monomial};
use crate::projgeom::enumerate_hyperplanes;

/// `F = G + H` with `G`, `H` in disjoint sets of variables, in the given
/// coordinates.
#[derive(Clone, Debug)]
pub struct SeparatedSplit {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub g: HomogPoly,
    pub h: HomogPoly,
}

impl SeparatedSplit {
    pub fn to_json(&self) -> Value {
        json!({
            "first": self.first,
            "second": self.second,
            "g": self.g.to_string(),
            "h": self.h.to_string(),
            "note": "separated in current coordinates",
        })
    }
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Components of the variable co-occurrence graph of the support; if there
/// are at least two, the last component (ordered by least variable) is split
/// off from the union of the others.
pub fn separated_variables_detect(poly: &HomogPoly) -> Option<SeparatedSplit> {
    let n = poly.nvars();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    for (m, _) in poly.terms() {
        let vars: Vec<usize> = (0..n).filter(|&i| m.exps()[i] > 0).collect();
        for &v in &vars {
            used[v] = true;
        }
        for w in vars.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut roots: Vec<usize> = (0..n)
        .filter(|&i| used[i])
        .map(|i| find(&mut parent, i))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    if roots.len() < 2 {
        return None;
    }
    let last = *roots.last().unwrap();
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for i in (0..n).filter(|&i| used[i]) {
        if find(&mut parent, i) == last {
            second.push(i);
        } else {
            first.push(i);
        }
    }
    let part = |in_second: bool| {
        let terms: Vec<(Monomial, Elem)> = poly
            .terms()
            .filter(|(m, _)| second.iter().any(|&v| m.exps()[v] > 0) == in_second)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        HomogPoly::from_terms(poly.field(), n, poly.degree(), terms).expect("subset of terms")
    };
    Some(SeparatedSplit {
        g: part(false),
        h: part(true),
        first,
        second,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalFormClause {
    /// `sum x_i^q A_ij x_j`, `A` skew with zero diagonal, nondegenerate.
    SkewQPlus1,
    /// `p = 2`, `n` even: `y_0 G + sum_{i,j >= 1} y_i^q B_ij y_j`.
    Char2Even,
    /// `p = 2`, `n = 2`: `x_0 x_1 x_2 (sum x_i^{q-1}) + G(x_0^2, x_1^2, x_2^2)`.
    QPlus2,
}

impl NormalFormClause {
    pub fn name(&self) -> &'static str {
        match self {
            NormalFormClause::SkewQPlus1 => "skew_q_plus_1",
            NormalFormClause::Char2Even => "char2_even",
            NormalFormClause::QPlus2 => "q_plus_2",
        }
    }

    pub fn all() -> [NormalFormClause; 3] {
        [
            NormalFormClause::SkewQPlus1,
            NormalFormClause::Char2Even,
            NormalFormClause::QPlus2,
        ]
    }

    fn degree(&self, q: u64) -> u64 {
        match self {
            NormalFormClause::QPlus2 => q + 2,
            _ => q + 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NormalFormVerdict {
    pub clause: NormalFormClause,
    pub matched: bool,
    /// The skew matrix `A` or `B` found, for clauses (1) and (2).
    pub matrix: Option<Matrix>,
    /// The distinguished linear form `y_0` for clause (2).
    pub y0: Option<HomogPoly>,
}

impl NormalFormVerdict {
    fn no(clause: NormalFormClause) -> Self {
        NormalFormVerdict {
            clause,
            matched: false,
            matrix: None,
            y0: None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "clause": self.clause.name(),
            "matched": self.matched,
            "matrix": self.matrix.as_ref().map(|m| m.rows().iter().map(|r| {
                r.iter().map(|&e| crate::mpoly::format_elem_literal(m.field(), e)).collect::<Vec<_>>()
            }).collect::<Vec<_>>()),
            "y0": self.y0.as_ref().map(|p| p.to_string()),
        })
    }
}

fn skew_nondegenerate(f: &Field, m: &Matrix) -> bool {
    let n = m.nrows();
    for i in 0..n {
        if !m.get(i, i).is_zero() {
            return false;
        }
        for j in 0..n {
            if m.get(i, j) != f.neg(m.get(j, i)) {
                return false;
            }
        }
    }
    !m.det().is_zero()
}

/// Whether `F` has the normal form of the given clause over its coefficient
/// field `F_q`.
pub fn normal_form_match(poly: &HomogPoly, clause: NormalFormClause) -> Result<NormalFormVerdict, AnalysisError> {
    let f = poly.field();
    let q = f.order() as u64;
    let expected = clause.degree(q);
    if poly.degree() != expected {
        return Err(AnalysisError::DegreeMismatch {
            expected,
            found: poly.degree(),
        });
    }
    match clause {
        NormalFormClause::SkewQPlus1 => {
            let Some(a) = as_frobenius_form(poly, q)? else {
                return Ok(NormalFormVerdict::no(clause));
            };
            let matched = skew_nondegenerate(f, &a.matrix);
            Ok(NormalFormVerdict {
                clause,
                matched,
                matrix: Some(a.matrix),
                y0: None,
            })
        }
        NormalFormClause::Char2Even => char2_even(poly, q),
        NormalFormClause::QPlus2 => {
            let n = poly.nvars();
            if f.characteristic() != 2 || n != 3 {
                return Ok(NormalFormVerdict::no(clause));
            }
            let qe = q as u32;
            let cyc = [[qe, 1, 1], [1, qe, 1], [1, 1, qe]];
            let c = poly.coeff(&Monomial::new(&cyc[0]));
            if c.is_zero() || cyc.iter().any(|e| poly.coeff(&Monomial::new(e)) != c) {
                return Ok(NormalFormVerdict::no(clause));
            }
            let scaled = poly.scale(f.inv(c)?);
            let terms: Vec<(Monomial, Elem)> = cyc.iter().map(|e| (Monomial::new(e), Elem::ONE)).collect();
            let head = HomogPoly::from_terms(f, 3, q + 2, terms)?;
            let rest = scaled.sub(&head)?;
            let matched = rest
                .terms()
                .all(|(m, _)| m.exps().iter().all(|&e| e % 2 == 0));
            Ok(NormalFormVerdict {
                clause,
                matched,
                matrix: None,
                y0: None,
            })
        }
    }
}

fn char2_even(poly: &HomogPoly, q: u64) -> Result<NormalFormVerdict, AnalysisError> {
    let clause = NormalFormClause::Char2Even;
    let f = poly.field();
    let nv = poly.nvars();
    if f.characteristic() != 2 || (nv - 1) % 2 != 0 || nv < 3 {
        return Ok(NormalFormVerdict::no(clause));
    }
    let f10 = compute_fab(poly, 1, 0, q)?;
    for h in enumerate_hyperplanes(nv - 1, f) {
        let y0 = h.as_form();
        if y0.pow(q - 1)?.mul(poly)? != f10 {
            continue;
        }
        let c = h.coeffs();
        let pivot = c.iter().position(|e| !e.is_zero()).unwrap();
        let mut t = Matrix::zeros(f, nv, nv);
        for j in 0..nv {
            t.set(0, j, c[j]);
        }
        let mut r = 1;
        for j in (0..nv).filter(|&j| j != pivot) {
            t.set(r, j, Elem::ONE);
            r += 1;
        }
        let tinv = t.inverse().expect("completed basis is invertible");
        let g = poly.substitute_linear(&tinv, nv)?;
        if g.terms().any(|(m, _)| m.exps()[0] > 0 && m.exps()[0] % 2 == 0) {
            continue;
        }
        let rest_terms: Vec<(Monomial, Elem)> = g
            .terms()
            .filter(|(m, _)| m.exps()[0] == 0)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        let rest = HomogPoly::from_terms(f, nv, g.degree(), rest_terms)?;
        let Some(a) = as_frobenius_form(&rest, q)? else {
            continue;
        };
        let rows: Vec<Vec<Elem>> = (1..nv)
            .map(|i| (1..nv).map(|j| a.matrix.get(i, j)).collect())
            .collect();
        let b = Matrix::from_rows(f, &rows);
        if skew_nondegenerate(f, &b) {
            return Ok(NormalFormVerdict {
                clause,
                matched: true,
                matrix: Some(b),
                y0: Some(y0),
            });
        }
    }
    Ok(NormalFormVerdict::no(clause))
}

/// Outcome of the exhaustive check that `(g t^d + h) r(t) = a t^{d+m} + b`
/// with `a, b, g, h` nonzero and `deg r = m` forces `d | m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GapLemmaReport {
    pub cases: u64,
    /// Cases where the product has exactly the two outer terms.
    pub hypothesis_holds: u64,
    /// `(q, d, m)` of cases with the hypothesis but `d` not dividing `m`.
    pub violations: Vec<(u64, u32, u32)>,
}

/// Checks the divisibility lemma over the prime fields `F_p` for `p` in
/// `primes`, `1 <= d <= max_d`, `0 <= m <= max_m`, all `g, h` and all `r`
/// of exact degree `m`.
pub fn gap_lemma_search(primes: &[u64], max_d: u32, max_m: u32) -> Result<GapLemmaReport, AnalysisError> {
    let mut rep = GapLemmaReport::default();
    for &p in primes {
        let field = crate::gf::make_field(p, 1, None)?;
        for d in 1..=max_d {
            for m in 0..=max_m {
                let total = p.pow(m + 1);
                for idx in 0..total {
                    let mut r = vec![0u64; m as usize + 1];
                    let mut x = idx;
                    for c in r.iter_mut() {
                        *c = x % p;
                        x /= p;
                    }
                    if r[m as usize] == 0 {
                        continue;
                    }
                    for g in 1..p {
                        for h in 1..p {
                            rep.cases += 1;
                            let mut prod = vec![0u64; (d + m) as usize + 1];
                            for (i, &ri) in r.iter().enumerate() {
                                prod[i] = (prod[i] + h * ri) % p;
                                prod[i + d as usize] = (prod[i + d as usize] + g * ri) % p;
                            }
                            let last = prod.len() - 1;
                            let outer = prod[0] != 0
                                && prod[last] != 0
                                && prod[1..last].iter().all(|&c| c == 0);
                            if outer {
                                rep.hypothesis_holds += 1;
                                if m % d != 0 {
                                    rep.violations.push((field.order() as u64, d, m));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

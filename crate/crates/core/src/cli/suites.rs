//! Named verification suites. Each runs a fixed set of exact sub-checks and
//! reports every one of them.

use std::fmt::Display;

use serde_json::{json, Value};

use crate::analysis::{
    blocking_verdict, bounds_calculator, census_records, classify_line, count_points,
    fq_line_intersection_profile, gap_lemma_search, line_incidence, smoothness, BoundCheck, BoundKind,
    CensusConfig, CensusFilter, CensusRecord, LineClass, NormalFormClause, Shard, SmoothnessMode, Q,
};
use crate::families::{
    char2_even_f4, gen_char2_even_n, gen_fermat_type, gen_hermitian, gen_hermitian_from_matrix,
    gen_space_filling, q_plus_2_builtin, FamilyInstance, Property, Q_PLUS_2_BUILTINS,
};
use crate::frobcore::{
    compute_fab, hermitian_decompose, hermitian_tests, is_frobenius_nonclassical, is_hermitian_hypersurface,
    F10Kind, SesquiMatrix,
};
use crate::gf::{make_field, Elem, Field, Matrix};
use crate::mpoly::{monomials_of_degree, parse_poly, HomogPoly};
use crate::projgeom::enumerate_lines;

/// One exact sub-check of a suite.
#[derive(Clone, Debug)]
pub struct SubCheck {
    pub name: String,
    /// The statement being checked.
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub id: &'static str,
    pub title: &'static str,
    pub checks: Vec<SubCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.id,
            "title": self.title,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "claim": c.claim,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {}: {}\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title
        );
        for c in &self.checks {
            s.push_str(&format!(
                "  [{}] {} | {}{}\n",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.claim,
                if c.detail.is_empty() {
                    String::new()
                } else {
                    format!(" | {}", c.detail)
                }
            ));
        }
        s
    }
}

/// Suite identifiers with titles, in acceptance order.
pub const SUITES: [(&str, &str); 13] = [
    ("hermitian-f10", "F_{1,0} = F^{sqrt q} for standard Hermitian forms"),
    ("space-filling", "skew forms in P^3 are smooth, nonclassical and space-filling"),
    ("q-plus-2", "the degree q+2 curves over F_2, F_4, F_8"),
    ("curve-count-hermitian-f4", "the Hermitian cubic meets the curve lower bound with equality"),
    ("blocking-hermitian-f4", "the Hermitian cubic is a nontrivial blocking set above Heim's value"),
    ("degree-corridor-q2", "census of plane forms over F_2 in degrees 2 to 5"),
    ("degree-corridor-q3", "census of plane forms over F_3 in degrees 3 and 4"),
    ("hermitian-decomposition-f9", "Hermitian and skew-Hermitian parts of all 2x2 matrices over F_9"),
    ("hermitian-surface-f4", "the Hermitian surface over F_4"),
    ("transversality-hermitian-f4", "transverse and non-transverse lines of the Hermitian cubic"),
    ("multi-frobenius", "skew forms over F_q and F_{q^2}"),
    ("separated-variables", "separated smooth nonclassical forms and the divisibility lemma"),
    ("incidence-multiplicities", "intersections of nonclassical plane curves with rational lines"),
];

struct Builder {
    checks: Vec<SubCheck>,
}

type Run = Result<(), String>;

impl Builder {
    fn check(&mut self, name: impl Into<String>, claim: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(SubCheck {
            name: name.into(),
            claim: claim.into(),
            passed,
            detail: detail.into(),
        });
    }
}

fn e<T, E: Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn field(p: u64, k: u32) -> Result<Field, String> {
    e(make_field(p, k, None))
}

pub fn run_suite(id: &str) -> Option<SuiteReport> {
    let (sid, title) = *SUITES.iter().find(|(s, _)| *s == id)?;
    let mut b = Builder { checks: Vec::new() };
    let res = match sid {
        "hermitian-f10" => hermitian_f10(&mut b),
        "space-filling" => space_filling(&mut b),
        "q-plus-2" => q_plus_2(&mut b),
        "curve-count-hermitian-f4" => curve_count(&mut b),
        "blocking-hermitian-f4" => blocking(&mut b),
        "degree-corridor-q2" => corridor_q2(&mut b),
        "degree-corridor-q3" => corridor_q3(&mut b),
        "hermitian-decomposition-f9" => decomposition(&mut b),
        "hermitian-surface-f4" => hermitian_surface(&mut b),
        "transversality-hermitian-f4" => transversality(&mut b),
        "multi-frobenius" => multi_frobenius(&mut b),
        "separated-variables" => separated(&mut b),
        "incidence-multiplicities" => incidence(&mut b),
        _ => unreachable!(),
    };
    if let Err(msg) = res {
        b.check("error", "suite ran to completion", false, msg);
    }
    Some(SuiteReport {
        id: sid,
        title,
        checks: b.checks,
    })
}

fn hermitian_f10(b: &mut Builder) -> Run {
    for (p, k) in [(2, 2), (3, 2), (2, 4)] {
        let f = field(p, k)?;
        let s = f.sqrt_order().unwrap() as u64;
        let q = f.order() as u64;
        for n in 1..=3 {
            let inst = e(gen_hermitian(&f, n, n))?;
            let f10 = e(compute_fab(&inst.poly, 1, 0, q))?;
            let pw = e(inst.poly.pow(s))?;
            b.check(
                format!("q={q} n={n} identity"),
                "F_{1,0} = F^{sqrt q}",
                f10 == pw,
                "",
            );
            let c = e(is_frobenius_nonclassical(&inst.poly, q))?;
            let ok = c.nonclassical && c.kind == F10Kind::ScalarPower { c: Elem::ONE, e: s };
            b.check(
                format!("q={q} n={n} classification"),
                format!("nonclassical with f10_kind scalar_power(1, {s})"),
                ok,
                c.kind.name(),
            );
        }
    }
    Ok(())
}

fn space_filling(b: &mut Builder) -> Run {
    for (p, k, want) in [(2, 1, 15), (3, 1, 40), (2, 2, 85)] {
        let f = field(p, k)?;
        let q = f.order() as u64;
        let inst = e(gen_space_filling(&f, 3))?;
        let f10 = e(compute_fab(&inst.poly, 1, 0, q))?;
        b.check(format!("q={q} f10"), "F_{1,0} = 0", f10.is_zero(), "");
        let v = e(smoothness(&inst.poly, SmoothnessMode::Certified))?;
        b.check(
            format!("q={q} smooth"),
            "certified smooth",
            v.smooth && v.exact,
            v.label(),
        );
        let c = e(count_points(&inst.poly, 1))?;
        b.check(
            format!("q={q} count"),
            format!("#X(F_q) = (q^4-1)/(q-1) = {want}"),
            c == want,
            format!("{c} points"),
        );
    }
    Ok(())
}

fn q_plus_2(b: &mut Builder) -> Run {
    for name in Q_PLUS_2_BUILTINS {
        let inst = e(q_plus_2_builtin(name))?;
        let q = inst.poly.field().order() as u64;
        let f10 = e(compute_fab(&inst.poly, 1, 0, q))?;
        b.check(format!("{name} f10"), "F_{1,0} = 0", f10.is_zero(), "");
        let v = e(smoothness(&inst.poly, SmoothnessMode::Certified))?;
        b.check(format!("{name} smooth"), "certified smooth", v.smooth && v.exact, v.label());
        let c = e(count_points(&inst.poly, 1))?;
        b.check(format!("{name} pointless"), "no F_q-points", c == 0, format!("{c} points"));
        for prop in [Property::CyclicPartials, Property::NotSeparated] {
            let r = e(crate::families::check_property(&inst.poly, prop))?;
            let claim = match prop {
                Property::CyclicPartials => "dF/dx_i = x_{i+1} x_{i+2}^q - x_{i+1}^q x_{i+2}",
                _ => "no separated variables",
            };
            b.check(format!("{name} {prop}"), claim, r.passed, r.detail);
        }
    }
    Ok(())
}

fn hermitian_cubic() -> Result<FamilyInstance, String> {
    e(gen_hermitian(&field(2, 2)?, 2, 2))
}

fn curve_count(b: &mut Builder) -> Run {
    let inst = hermitian_cubic()?;
    let c = e(count_points(&inst.poly, 1))?;
    let bound = e(BoundCheck::new(BoundKind::CurveLower { d: 3, q: 4 }, true, c, true))?;
    b.check("count", "#C(F_4) = 9", c == 9, format!("{c} points"));
    b.check(
        "equality",
        "#C(F_q) = d(q - d + 2)",
        bound.value == Q::from_integer(c as i128),
        format!("bound {}", bound.value),
    );
    Ok(())
}

fn blocking(b: &mut Builder) -> Run {
    let inst = hermitian_cubic()?;
    let rep = e(blocking_verdict(&inst.poly))?;
    let lines = enumerate_lines(2, inst.poly.field()).len();
    b.check("lines", "21 lines checked", lines == 21, format!("{lines} lines"));
    b.check("blocking", "meets every F_4-line", rep.blocking, "");
    b.check("nontrivial", "contains no full F_4-line", rep.nontrivial, "");
    let heim = rep.heim.ok_or("no Heim bound computed")?;
    b.check(
        "heim",
        "#C(F_4) >= (q^2-1)/(q-1) + sqrt q = 7",
        heim.value == Q::from_integer(7) && heim.satisfied && heim.applies,
        format!("{} >= {}", heim.observed, heim.value),
    );
    Ok(())
}

fn plane_census(q_field: &Field, d: u32, filters: &[CensusFilter], shards: u64) -> Result<Vec<CensusRecord>, String> {
    let mut all = Vec::new();
    for i in 0..shards {
        let cfg = CensusConfig::new(q_field, 2, d, filters).with_shard(Shard { index: i, total: shards });
        let (recs, _) = e(census_records(&cfg))?;
        all.extend(recs);
    }
    all.sort_by_key(|r| r.index);
    Ok(all)
}

fn corridor_q2(b: &mut Builder) -> Run {
    use CensusFilter::*;
    let f2 = field(2, 1)?;
    let conics = plane_census(&f2, 2, &[Fn], 1)?;
    let rational = plane_census(&f2, 2, &[Fn, SmoothAtRational], 1)?;
    b.check(
        "d=2",
        "no nonclassical conic is smooth at its F_2-points",
        rational.is_empty() && conics.iter().all(|r| !r.smooth_at_rational),
        format!("{} nonclassical conics, all singular at a rational point", conics.len()),
    );
    let cubics = plane_census(&f2, 3, &[Fn, Smooth], 1)?;
    b.check(
        "d=3",
        "smooth nonclassical cubics have the characteristic 2 normal form",
        cubics.iter().all(|r| r.normal_forms.contains(&NormalFormClause::Char2Even)),
        format!("{} hits", cubics.len()),
    );
    let quartics = plane_census(&f2, 4, &[Fn, Smooth], 1)?;
    b.check(
        "d=4",
        "smooth nonclassical quartics exist and all have the degree q+2 normal form",
        !quartics.is_empty() && quartics.iter().all(|r| r.normal_forms.contains(&NormalFormClause::QPlus2)),
        format!(
            "{} hits: {}",
            quartics.len(),
            quartics.iter().map(|r| r.poly.to_string()).collect::<Vec<_>>().join("; ")
        ),
    );
    let quintics = plane_census(&f2, 5, &[Fn, Smooth], 1)?;
    b.check(
        "d=5",
        "no smooth nonclassical quintic (d <= q + 2)",
        quintics.is_empty(),
        format!("{} hits", quintics.len()),
    );
    Ok(())
}

fn is_multiple(a: &HomogPoly, b: &HomogPoly) -> bool {
    a.field().nonzero_elements().any(|c| &b.scale(c) == a)
}

fn corridor_q3(b: &mut Builder) -> Run {
    use CensusFilter::*;
    let f3 = field(3, 1)?;
    let cubics = plane_census(&f3, 3, &[Fn, SmoothAtRational], 1)?;
    b.check(
        "d=3",
        "no nonclassical cubic smooth at its F_3-points (d >= p + 1)",
        cubics.is_empty(),
        format!("{} hits", cubics.len()),
    );
    let quartics = plane_census(&f3, 4, &[Fn], 4)?;
    let skew = e(parse_poly("x0^3*x1 - x0*x1^3", &f3, 3))?;
    let found = quartics.iter().find(|r| is_multiple(&r.poly, &skew));
    b.check(
        "d=4",
        "the skew form x0^3 x1 - x0 x1^3 is found and classified nonclassical",
        found.map(|r| r.fn_).unwrap_or(false),
        format!(
            "{} nonclassical quartics over 4 shards; match {}",
            quartics.len(),
            found.map(|r| r.poly.to_string()).unwrap_or_else(|| "none".into())
        ),
    );
    let indices_sorted = quartics.windows(2).all(|w| w[0].index < w[1].index);
    b.check("merge", "merged shard output is strictly ordered", indices_sorted, "");
    Ok(())
}

fn decomposition(b: &mut Builder) -> Run {
    let f9 = field(3, 2)?;
    let els: Vec<Elem> = f9.elements().collect();
    let (mut cases, mut bad_parts, mut bad_sum, mut bad_identity) = (0u64, 0u64, 0u64, 0u64);
    for &a in &els {
        for &bb in &els {
            for &c in &els {
                for &d in &els {
                    cases += 1;
                    let m = Matrix::from_rows(&f9, &[vec![a, bb], vec![c, d]]);
                    let sm = e(SesquiMatrix::new(m.clone(), 3))?;
                    let (m1, m2) = e(hermitian_decompose(&sm))?;
                    if !e(hermitian_tests(&m1))?.is_hermitian || !e(hermitian_tests(&m2))?.is_skew_hermitian {
                        bad_parts += 1;
                    }
                    if m1.matrix.add(&m2.matrix) != m {
                        bad_sum += 1;
                    }
                    let fpoly = sm.to_poly();
                    if fpoly.is_zero() {
                        continue;
                    }
                    let g = e(compute_fab(&fpoly, 1, 0, 9))?;
                    let rhs = e(e(m1.to_poly().pow(3))?.sub(&e(m2.to_poly().pow(3))?))?;
                    if g != rhs {
                        bad_identity += 1;
                    }
                }
            }
        }
    }
    b.check("cases", "all 6561 matrices", cases == 6561, format!("{cases} cases"));
    b.check("parts", "M1 Hermitian and M2 skew-Hermitian", bad_parts == 0, format!("{bad_parts} failures"));
    b.check("sum", "M = M1 + M2", bad_sum == 0, format!("{bad_sum} failures"));
    b.check("identity", "G = F1^3 - F2^3", bad_identity == 0, format!("{bad_identity} failures"));
    Ok(())
}

fn hermitian_surface(b: &mut Builder) -> Run {
    let inst = e(gen_hermitian(&field(2, 2)?, 3, 3))?;
    let v = e(smoothness(&inst.poly, SmoothnessMode::Certified))?;
    b.check("smooth", "certified smooth", v.smooth && v.exact, v.label());
    let c = e(is_frobenius_nonclassical(&inst.poly, 4))?;
    b.check("fn", "Frobenius nonclassical over F_4", c.nonclassical, c.kind.name());
    let n = e(count_points(&inst.poly, 1))?;
    b.check("count", "#X(F_4) = 45 of 85 points", n == 45, format!("{n} points"));
    let bound = e(bounds_calculator(BoundKind::SurfaceLower { d: 3, q: 4 }))?;
    b.check(
        "lower bound",
        "#X(F_q) >= (q^3+q^2+q+1) d (q-d+2) / ((q^2+q) + d (q-d+2)) = 765/29",
        bound == Q::new(765, 29) && Q::from_integer(n as i128) >= bound,
        format!("{n} >= {bound}"),
    );
    Ok(())
}

fn transversality(b: &mut Builder) -> Run {
    let inst = hermitian_cubic()?;
    let rep = e(line_incidence(&inst.poly, true, true))?;
    b.check("transverse exists", "some F_4-line is transverse", rep.transverse >= 1, format!("{} transverse", rep.transverse));
    let mut only_rational = true;
    for (l, cls) in &rep.lines {
        if *cls == LineClass::Transverse {
            let prof = e(fq_line_intersection_profile(&inst.poly, l))?;
            only_rational &= prof.iter().all(|pt| pt.degree == 1);
        }
    }
    b.check("rational only", "transverse lines meet C in F_4-points only", only_rational, "");
    for bound in &rep.bounds {
        b.check(
            bound.name,
            format!("non-transverse lines <= {}", bound.formula),
            bound.applies && bound.satisfied,
            format!("{} <= {}", bound.observed, bound.value),
        );
    }
    Ok(())
}

fn multi_frobenius(b: &mut Builder) -> Run {
    for p in [2u64, 3] {
        let f = field(p, 1)?;
        let q = p;
        for n in [1usize, 3] {
            let inst = e(gen_space_filling(&f, n))?;
            let tag = format!("q={q} n={n}");
            let c1 = e(is_frobenius_nonclassical(&inst.poly, q))?;
            let c2 = e(is_frobenius_nonclassical(&inst.poly, q * q))?;
            b.check(format!("{tag} fn"), "nonclassical over F_q and F_{q^2}", c1.nonclassical && c2.nonclassical, "");
            let f10 = e(compute_fab(&inst.poly, 1, 0, q * q))?;
            let want = e(inst.poly.pow(q))?.neg();
            b.check(format!("{tag} identity"), "F_{1,0} over F_{q^2} = -F^q", f10 == want, "");
            let big = field(p, 2)?;
            let lifted = e(inst.poly.embed(&big))?;
            let alpha = big
                .nonzero_elements()
                .find(|&a| big.pow(a, q) == big.neg(a))
                .ok_or("no alpha with alpha^q = -alpha")?;
            let v = e(is_hermitian_hypersurface(&lifted.scale(alpha), q * q))?;
            b.check(
                format!("{tag} hermitian"),
                "alpha F is Hermitian over F_{q^2} when alpha^q = -alpha",
                v.hermitian,
                "",
            );
        }
    }
    Ok(())
}

fn separated(b: &mut Builder) -> Run {
    use CensusFilter::*;
    for (p, k) in [(2, 1), (2, 2)] {
        let f = field(p, k)?;
        let q = f.order();
        let hits = plane_census(&f, 3, &[Fn, Smooth], 1)?;
        let sep: Vec<&CensusRecord> = hits.iter().filter(|r| r.separated_variables).collect();
        let ok = sep.iter().all(|r| r.d as u64 % p == 1 % p);
        b.check(
            format!("q={q} d=3"),
            "separated smooth nonclassical hits have d = 1 mod p",
            ok,
            format!("{} hits, {} separated", hits.len(), sep.len()),
        );
    }
    let rep = e(gap_lemma_search(&[2, 3], 4, 8))?;
    b.check(
        "divisibility",
        "(g t^d + h) r(t) = a t^(d+m) + b forces d | m",
        rep.violations.is_empty() && rep.hypothesis_holds > 0,
        format!("{} cases, {} with the hypothesis, {} violations", rep.cases, rep.hypothesis_holds, rep.violations.len()),
    );
    Ok(())
}

/// Nonclassical plane-curve family instances over fields with `q <= 4`.
fn incidence_instances() -> Result<Vec<FamilyInstance>, String> {
    let f2 = field(2, 1)?;
    let f4 = field(2, 2)?;
    let mut out = Vec::new();
    for r in 0..=2 {
        out.push(e(gen_hermitian(&f4, 2, r))?);
    }
    let a = f4.generator();
    let h = Matrix::from_rows(
        &f4,
        &[
            vec![Elem::ONE, a, Elem::ZERO],
            vec![f4.mul(a, a), Elem::ZERO, Elem::ZERO],
            vec![Elem::ZERO, Elem::ZERO, Elem::ONE],
        ],
    );
    out.push(e(gen_hermitian_from_matrix(&h))?);
    out.push(char2_even_f4().map_err(|x| x.to_string())?);
    out.push(e(gen_fermat_type(2, 1, 1, 2))?);
    let b2 = Matrix::from_ints(&f2, &[&[0, 1], &[1, 0]]);
    let mons: Vec<_> = monomials_of_degree(3, 2)
        .into_iter()
        .filter(|m| m.exps()[0] % 2 == 0)
        .collect();
    for mask in 1u32..(1 << mons.len()) {
        let terms: Vec<_> = mons
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, m)| (m.clone(), Elem::ONE))
            .collect();
        let g = e(HomogPoly::from_terms(&f2, 3, 2, terms))?;
        let inst = e(gen_char2_even_n(&g, &b2))?;
        if inst.has(Property::FnOver(2)) {
            out.push(inst);
        }
    }
    Ok(out)
}

fn incidence(b: &mut Builder) -> Run {
    let mut instances = 0;
    let mut lines_checked = 0;
    let mut failures = Vec::new();
    for inst in incidence_instances()? {
        let f = inst.poly.field();
        let p = f.characteristic() as u64;
        let q = f.order() as u64;
        if inst.poly.nvars() != 3 || q > 4 || inst.poly.degree() % p == 0 {
            continue;
        }
        if !e(is_frobenius_nonclassical(&inst.poly, q))?.nonclassical {
            failures.push(format!("{} is not nonclassical", inst.poly));
            continue;
        }
        instances += 1;
        for l in enumerate_lines(2, f) {
            if e(classify_line(&inst.poly, &l))? == LineClass::Contained {
                continue;
            }
            lines_checked += 1;
            let prof = e(fq_line_intersection_profile(&inst.poly, &l))?;
            let rational = prof.iter().any(|pt| pt.degree == 1);
            let divisible = prof
                .iter()
                .filter(|pt| pt.degree > 1)
                .all(|pt| pt.multiplicity as u64 % p == 0);
            if !rational || !divisible {
                failures.push(format!("{} on line {:?}", inst.poly, l.rows()));
            }
        }
    }
    b.check(
        "instances",
        "nonclassical plane family instances with q <= 4 and p not dividing d",
        instances >= 5,
        format!("{instances} instances, {lines_checked} lines"),
    );
    b.check(
        "profiles",
        "each non-contained F_q-line meets X in a rational point and p divides every irrational multiplicity",
        failures.is_empty(),
        failures.join("; "),
    );
    Ok(())
}

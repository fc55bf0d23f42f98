//! Points, lines and hyperplanes of `P^n` over a finite field.
//!
//! Points are normalized so the first nonzero coordinate is 1. They are
//! enumerated in increasing order of the integer `sum c_i q^i` (with `c_i`
//! the element encodings), which admits O(n) ranking and unranking, so any
//! index range can be materialized independently for parallel work.

use std::fmt;

use thiserror::Error;

use crate::gf::{Elem, Field, GfError, Matrix};
use crate::mpoly::{format_elem_literal, parse_elem, Evaluator, HomogPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("a line needs two distinct points")]
    EqualPoints,
    #[error("all partial derivatives vanish at the point")]
    SingularPoint,
    #[error("the point does not lie on the hypersurface")]
    PointNotOnHypersurface,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("malformed point literal: {0}")]
    BadPoint(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Number of points of `P^n(F_q)`.
pub fn point_count(n: usize, q: u64) -> u64 {
    (0..=n as u32).map(|t| q.pow(t)).sum()
}

/// Writes the `idx`-th normalized vector of length `out.len()` over a field
/// of order `q` into `out`.
pub fn unrank_point(q: u64, idx: u64, out: &mut [Elem]) {
    let len = out.len();
    out.iter_mut().for_each(|c| *c = Elem::ZERO);
    let mut idx = idx;
    let mut hi = len;
    loop {
        // Locate the block of the highest nonzero coordinate t < hi.
        let mut t = 0usize;
        let mut block = 1u64;
        while idx >= block {
            idx -= block;
            t += 1;
            block *= q;
        }
        debug_assert!(t < hi, "point index out of range");
        if idx == 0 {
            out[t] = Elem::ONE;
            return;
        }
        let nt = point_count(t - 1, q);
        let j = idx - 1;
        out[t] = Elem((j / nt + 1) as u32);
        idx = j % nt;
        hi = t;
    }
}

/// Inverse of [`unrank_point`] for a normalized nonzero vector.
pub fn rank_point(q: u64, coords: &[Elem]) -> u64 {
    let Some(t) = coords.iter().rposition(|c| !c.is_zero()) else {
        panic!("zero vector has no rank");
    };
    let offset: u64 = (0..t as u32).map(|s| q.pow(s)).sum();
    if coords[..t].iter().all(|c| c.is_zero()) {
        return offset;
    }
    let nt = point_count(t - 1, q);
    offset + 1 + (coords[t].0 as u64 - 1) * nt + rank_point(q, &coords[..t])
}

/// A point of projective space with normalized coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    field: Field,
    coords: Vec<Elem>,
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|&c| format_elem_literal(&self.field, c))
            .collect();
        write!(f, "({})", parts.join(" : "))
    }
}

impl ProjPoint {
    pub fn new(field: &Field, coords: &[Elem]) -> Result<Self, GeomError> {
        let first = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(GeomError::ZeroVector)?;
        let inv = field.inv(coords[first])?;
        Ok(ProjPoint {
            field: field.clone(),
            coords: coords.iter().map(|&c| field.mul(inv, c)).collect(),
        })
    }

    pub fn from_ints(field: &Field, coords: &[i64]) -> Result<Self, GeomError> {
        let v: Vec<Elem> = coords.iter().map(|&c| field.from_int(c)).collect();
        Self::new(field, &v)
    }

    /// The `idx`-th point of `P^n` in enumeration order.
    pub fn at_index(field: &Field, n: usize, idx: u64) -> Self {
        let mut coords = vec![Elem::ZERO; n + 1];
        unrank_point(field.order() as u64, idx, &mut coords);
        ProjPoint {
            field: field.clone(),
            coords,
        }
    }

    pub fn index(&self) -> u64 {
        rank_point(self.field.order() as u64, &self.coords)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    /// Projective dimension of the ambient space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Parses `(c0 : c1 : ... : cn)`.
    pub fn parse(text: &str, field: &Field) -> Result<Self, GeomError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| GeomError::BadPoint(text.to_string()))?;
        let coords: Result<Vec<Elem>, PolyError> =
            inner.split(':').map(|c| parse_elem(c.trim(), field)).collect();
        Self::new(field, &coords?)
    }

    /// Whether all coordinates lie in the subfield of order `q`.
    pub fn is_rational_over(&self, q: u64) -> bool {
        frobenius_point(self, q) == *self
    }

    /// The same point viewed over an extension field.
    pub fn embed(&self, target: &Field) -> Result<Self, GeomError> {
        let e = crate::gf::Embedding::between(&self.field, target)?;
        let c: Vec<Elem> = self.coords.iter().map(|&x| e.apply(x)).collect();
        Self::new(target, &c)
    }
}

/// All points of `P^n` over `field` in enumeration order.
pub fn enumerate_points(n: usize, field: &Field) -> Vec<ProjPoint> {
    points_in_range(n, field, 0..point_count(n, field.order() as u64))
}

/// A contiguous slice of the point enumeration.
pub fn points_in_range(n: usize, field: &Field, range: std::ops::Range<u64>) -> Vec<ProjPoint> {
    range.map(|i| ProjPoint::at_index(field, n, i)).collect()
}

/// The `x -> x^q` Frobenius on coordinates, renormalized.
pub fn frobenius_point(p: &ProjPoint, q: u64) -> ProjPoint {
    let f = &p.field;
    let c: Vec<Elem> = p.coords.iter().map(|&x| f.pow(x, q)).collect();
    ProjPoint::new(f, &c).expect("Frobenius is injective")
}

/// A hyperplane `sum h_i x_i = 0`, stored by normalized dual coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Hyperplane {
    dual: ProjPoint,
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_form())
    }
}

impl Hyperplane {
    pub fn new(field: &Field, dual: &[Elem]) -> Result<Self, GeomError> {
        Ok(Hyperplane {
            dual: ProjPoint::new(field, dual)?,
        })
    }

    pub fn dual(&self) -> &ProjPoint {
        &self.dual
    }

    pub fn coeffs(&self) -> &[Elem] {
        self.dual.coords()
    }

    /// The defining linear form.
    pub fn as_form(&self) -> HomogPoly {
        HomogPoly::linear(self.dual.field(), self.dual.coords())
    }

    /// The `i`-th hyperplane in the dual enumeration.
    pub fn at_index(field: &Field, n: usize, idx: u64) -> Self {
        Hyperplane {
            dual: ProjPoint::at_index(field, n, idx),
        }
    }
}

pub fn enumerate_hyperplanes(n: usize, field: &Field) -> Vec<Hyperplane> {
    enumerate_points(n, field)
        .into_iter()
        .map(|dual| Hyperplane { dual })
        .collect()
}

pub fn point_on_hyperplane(p: &ProjPoint, h: &Hyperplane) -> Result<bool, GeomError> {
    p.field.check_same(h.dual.field())?;
    if p.coords.len() != h.dual.coords.len() {
        return Err(GeomError::DimensionMismatch(p.dim(), h.dual.dim()));
    }
    let f = &p.field;
    let s = p
        .coords
        .iter()
        .zip(h.coeffs())
        .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
    Ok(s.is_zero())
}

/// Values of the gradient of `F` at `p`, in the field of `p`.
pub fn gradient_at(poly: &HomogPoly, p: &ProjPoint) -> Result<Vec<Elem>, GeomError> {
    if poly.nvars() != p.coords.len() {
        return Err(GeomError::DimensionMismatch(poly.nvars(), p.coords.len()));
    }
    poly.gradient()
        .iter()
        .map(|g| Ok(Evaluator::new(g, p.field())?.eval(&p.coords)))
        .collect()
}

/// `F(p)` in the field of `p`.
pub fn value_at(poly: &HomogPoly, p: &ProjPoint) -> Result<Elem, GeomError> {
    if poly.nvars() != p.coords.len() {
        return Err(GeomError::DimensionMismatch(poly.nvars(), p.coords.len()));
    }
    Ok(Evaluator::new(poly, p.field())?.eval(&p.coords))
}

/// The embedded tangent hyperplane at a smooth point of `{F = 0}`.
pub fn tangent_hyperplane(poly: &HomogPoly, p: &ProjPoint) -> Result<Hyperplane, GeomError> {
    if !value_at(poly, p)?.is_zero() {
        return Err(GeomError::PointNotOnHypersurface);
    }
    let g = gradient_at(poly, p)?;
    if g.iter().all(|c| c.is_zero()) {
        return Err(GeomError::SingularPoint);
    }
    Hyperplane::new(p.field(), &g)
}

/// A line of `P^n`, stored as the reduced row echelon form of a 2 x (n+1)
/// spanning matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjLine {
    field: Field,
    rows: [Vec<Elem>; 2],
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_row = |r: &Vec<Elem>| -> String {
            let v: Vec<String> = r
                .iter()
                .map(|&c| format_elem_literal(&self.field, c))
                .collect();
            v.join(" ")
        };
        write!(f, "[{}; {}]", fmt_row(&self.rows[0]), fmt_row(&self.rows[1]))
    }
}

impl ProjLine {
    fn from_matrix(m: &Matrix) -> Result<Self, GeomError> {
        let (r, piv) = m.rref();
        if piv.len() != 2 {
            return Err(GeomError::EqualPoints);
        }
        Ok(ProjLine {
            field: m.field().clone(),
            rows: [r.row(0).to_vec(), r.row(1).to_vec()],
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> &[Vec<Elem>; 2] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows[0].len() - 1
    }

    /// The `(n+1) x 2` matrix sending `(s, t)` to `s r_0 + t r_1`.
    pub fn parametrization(&self) -> Matrix {
        Matrix::from_rows(&self.field, &[self.rows[0].clone(), self.rows[1].clone()]).transpose()
    }

    /// The point with parameter `(s : t)`.
    pub fn point_at(&self, s: Elem, t: Elem) -> ProjPoint {
        let f = &self.field;
        let c: Vec<Elem> = self.rows[0]
            .iter()
            .zip(&self.rows[1])
            .map(|(&a, &b)| f.add(f.mul(s, a), f.mul(t, b)))
            .collect();
        ProjPoint::new(f, &c).expect("rows are independent")
    }

    /// The `q + 1` points, in the order of `P^1` enumeration of parameters.
    pub fn points(&self) -> Vec<ProjPoint> {
        enumerate_points(1, &self.field)
            .iter()
            .map(|st| self.point_at(st.coords[0], st.coords[1]))
            .collect()
    }

    pub fn contains(&self, p: &ProjPoint) -> Result<bool, GeomError> {
        self.field.check_same(p.field())?;
        let m = Matrix::from_rows(
            &self.field,
            &[self.rows[0].clone(), self.rows[1].clone(), p.coords.clone()],
        );
        Ok(m.rank() == 2)
    }
}

pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine, GeomError> {
    p.field.check_same(q.field())?;
    if p == q {
        return Err(GeomError::EqualPoints);
    }
    ProjLine::from_matrix(&Matrix::from_rows(
        &p.field,
        &[p.coords.clone(), q.coords.clone()],
    ))
}

/// All lines of `P^n`, grouped by pivot columns and then by free entries.
pub fn enumerate_lines(n: usize, field: &Field) -> Vec<ProjLine> {
    let q = field.order() as u64;
    let mut out = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            let free0: Vec<usize> = (i + 1..=n).filter(|&c| c != j).collect();
            let free1: Vec<usize> = (j + 1..=n).collect();
            let nf = free0.len() + free1.len();
            for idx in 0..q.pow(nf as u32) {
                let mut r0 = vec![Elem::ZERO; n + 1];
                let mut r1 = vec![Elem::ZERO; n + 1];
                r0[i] = Elem::ONE;
                r1[j] = Elem::ONE;
                let mut t = idx;
                for &c in &free0 {
                    r0[c] = Elem((t % q) as u32);
                    t /= q;
                }
                for &c in &free1 {
                    r1[c] = Elem((t % q) as u32);
                    t /= q;
                }
                out.push(ProjLine {
                    field: field.clone(),
                    rows: [r0, r1],
                });
            }
        }
    }
    out
}

/// The lines through `p`, one for each point of the coordinate hyperplane
/// `x_k = 0` where `k` is the first nonzero coordinate of `p`.
pub fn lines_through_point(p: &ProjPoint) -> Vec<ProjLine> {
    let n = p.dim();
    let k = p.coords.iter().position(|c| !c.is_zero()).unwrap();
    enumerate_points(n - 1, &p.field)
        .into_iter()
        .map(|r| {
            let mut c = r.coords.clone();
            c.insert(k, Elem::ZERO);
            let other = ProjPoint::new(&p.field, &c).unwrap();
            line_through(p, &other).unwrap()
        })
        .collect()
}

/// Gaussian binomial `[n+1 choose 2]_q`, the number of lines in `P^n`.
pub fn line_count(n: usize, q: u64) -> u64 {
    point_count(n, q) * point_count(n - 1, q) / (q + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::mpoly::parse_poly;
    use std::collections::HashSet;

    fn f2() -> Field {
        make_field(2, 1, None).unwrap()
    }
    fn f4() -> Field {
        make_field(2, 2, None).unwrap()
    }

    #[test]
    fn small_enumerations() {
        let pts = enumerate_points(1, &f2());
        let s: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["(1 : 0)", "(0 : 1)", "(1 : 1)"]);
        assert_eq!(enumerate_points(3, &f2()).len(), 15);
        assert_eq!(enumerate_points(2, &f4()).len(), 21);
        assert_eq!(enumerate_lines(2, &f2()).len(), 7);
        assert_eq!(enumerate_lines(2, &f4()).len(), 21);
        assert_eq!(enumerate_lines(3, &f2()).len(), 35);
    }

    #[test]
    fn counts_over_grid() {
        for (p, k) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)] {
            let f = make_field(p, k, None).unwrap();
            let q = f.order() as u64;
            for n in 0..=4usize {
                let total = point_count(n, q);
                if total > 100_000 {
                    continue;
                }
                let pts = enumerate_points(n, &f);
                assert_eq!(pts.len() as u64, (q.pow(n as u32 + 1) - 1) / (q - 1));
                let uniq: HashSet<_> = pts.iter().collect();
                assert_eq!(uniq.len(), pts.len());
                for (i, pt) in pts.iter().enumerate() {
                    assert_eq!(pt.index(), i as u64);
                    assert_eq!(pt.coords().iter().find(|c| !c.is_zero()), Some(&Elem::ONE));
                }
                // Enumeration order is the integer order of coordinate vectors.
                let keys: Vec<u64> = pts
                    .iter()
                    .map(|p| p.coords().iter().rev().fold(0, |a, c| a * q + c.0 as u64))
                    .collect();
                assert!(keys.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn lines_and_incidence() {
        for f in [f2(), make_field(3, 1, None).unwrap(), f4()] {
            let q = f.order() as u64;
            for n in 1..=3usize {
                let lines = enumerate_lines(n, &f);
                assert_eq!(lines.len() as u64, line_count(n, q));
                let uniq: HashSet<_> = lines.iter().collect();
                assert_eq!(uniq.len(), lines.len());
                let pts = enumerate_points(n, &f);
                for l in &lines {
                    let on: Vec<_> = pts.iter().filter(|p| l.contains(p).unwrap()).collect();
                    assert_eq!(on.len() as u64, q + 1);
                    let mut listed = l.points();
                    listed.sort_by_key(|p| p.index());
                    let mut on: Vec<ProjPoint> = on.into_iter().cloned().collect();
                    on.sort_by_key(|p| p.index());
                    assert_eq!(listed, on);
                    assert_eq!(line_through(&listed[0], &listed[1]).unwrap(), *l);
                }
            }
        }
    }

    #[test]
    fn line_examples() {
        let f = f2();
        let a = ProjPoint::from_ints(&f, &[1, 0, 0]).unwrap();
        let b = ProjPoint::from_ints(&f, &[0, 1, 0]).unwrap();
        let l = line_through(&a, &b).unwrap();
        assert_eq!(l.rows()[0], vec![Elem(1), Elem(0), Elem(0)]);
        assert_eq!(l.rows()[1], vec![Elem(0), Elem(1), Elem(0)]);
        assert_eq!(line_through(&a, &a), Err(GeomError::EqualPoints));
        let h = Hyperplane::new(&f, &[Elem(1), Elem(1), Elem(0)]).unwrap();
        let p = ProjPoint::from_ints(&f, &[1, 1, 0]).unwrap();
        assert!(point_on_hyperplane(&p, &h).unwrap());
        let f4 = f4();
        let p = ProjPoint::from_ints(&f4, &[0, 1, 1]).unwrap();
        let through = lines_through_point(&p);
        assert_eq!(through.len(), 5);
        assert!(through.iter().all(|l| l.contains(&p).unwrap()));
        let uniq: HashSet<_> = through.iter().collect();
        assert_eq!(uniq.len(), 5);
    }

    #[test]
    fn frobenius_examples() {
        let f = f4();
        let a = f.generator();
        let p = ProjPoint::new(&f, &[Elem::ONE, a]).unwrap();
        let fp = frobenius_point(&p, 2);
        assert_eq!(fp.coords(), &[Elem::ONE, f.add(a, Elem::ONE)]);
        assert_eq!(frobenius_point(&fp, 2), p);
        for pt in enumerate_points(2, &f) {
            assert_eq!(frobenius_point(&pt, 4), pt);
        }
    }

    #[test]
    fn frobenius_fixes_exactly_rational_points() {
        for (p, k) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let base = make_field(p, k, None).unwrap();
            let q = base.order() as u64;
            for m in 1..=2u32 {
                let ext = base.extension(m).unwrap();
                for n in 0..=2usize {
                    let fixed = enumerate_points(n, &ext)
                        .into_iter()
                        .filter(|pt| frobenius_point(pt, q) == *pt)
                        .count() as u64;
                    assert_eq!(fixed, point_count(n, q));
                }
            }
        }
    }

    #[test]
    fn tangent_examples() {
        let f = f4();
        let herm = parse_poly("x0^3 + x1^3 + x2^3", &f, 3).unwrap();
        let p = ProjPoint::from_ints(&f, &[1, 1, 0]).unwrap();
        let t = tangent_hyperplane(&herm, &p).unwrap();
        assert_eq!(t.coeffs(), &[Elem(1), Elem(1), Elem(0)]);
        assert!(point_on_hyperplane(&p, &t).unwrap());
        let f3 = make_field(3, 1, None).unwrap();
        let conic = parse_poly("x0*x2 - x1^2", &f3, 3).unwrap();
        let p = ProjPoint::from_ints(&f3, &[1, 0, 0]).unwrap();
        assert_eq!(
            tangent_hyperplane(&conic, &p).unwrap().coeffs(),
            &[Elem(0), Elem(0), Elem(1)]
        );
        let off = ProjPoint::from_ints(&f3, &[1, 1, 0]).unwrap();
        assert_eq!(
            tangent_hyperplane(&conic, &off),
            Err(GeomError::PointNotOnHypersurface)
        );
    }

    #[test]
    fn point_literals_round_trip() {
        let f = make_field(3, 2, None).unwrap();
        for p in enumerate_points(2, &f).into_iter().step_by(7) {
            assert_eq!(ProjPoint::parse(&p.to_string(), &f).unwrap(), p);
        }
    }
}

//! Constructors for the explicit hypersurface families, each paired with a
//! list of properties that [`FamilyInstance::verify`] checks by computation.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::analysis::{
    best_smoothness, count_points, normal_form_match, separated_variables_detect, AnalysisError,
    NormalFormClause,
};
use crate::frobcore::{
    compute_fab, hermitian_tests, is_frobenius_nonclassical, is_hermitian_hypersurface, F10Kind,
    FrobError, SesquiMatrix,
};
use crate::gf::{make_field, Elem, Embedding, Field, GfError, Matrix};
use crate::mpoly::{format_elem_literal, parse_poly, HomogPoly, Monomial, PolyError};
use crate::projgeom::point_count;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("matrix is not skew-symmetric with zero diagonal")]
    NotSkew,
    #[error("matrix is degenerate")]
    Degenerate,
    #[error("matrix size {0} is odd; n must be odd")]
    OddSize(usize),
    #[error("field order {0} is not a square")]
    NotASquare(u64),
    #[error("matrix is not Hermitian or is zero")]
    NotHermitianMatrix,
    #[error("characteristic {0} is not 2")]
    WrongCharacteristic(u32),
    #[error("n = {0} is odd; this family needs n even")]
    OddN(usize),
    #[error("bad auxiliary polynomial: {0}")]
    BadG(String),
    #[error("the given elements are not a basis")]
    NotABasis,
    #[error("n + 1 = {0} is divisible by the characteristic")]
    BadDimension(usize),
    #[error("degrees {0} and {1} differ")]
    DegreeMismatch(u64, u64),
    #[error("verification failed: {0}")]
    VerificationFailure(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Frob(#[from] FrobError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// A property a family asserts for an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// Frobenius nonclassical over `F_Q`.
    FnOver(u64),
    /// `F_{1,0} = 0` over `F_Q`.
    F10Zero(u64),
    /// `F_{1,0} = c F^e` over `F_Q`.
    F10Power { q: u64, e: u64 },
    /// `F_{1,0} = x_0^{Q-1} F` over `F_Q`.
    F10X0Power(u64),
    SpaceFilling,
    Smooth,
    Singular,
    Pointless,
    Hermitian,
    SeparatedVariables,
    NotSeparated,
    HessianDetZero,
    /// `dF/dx_i = x_{i+1} x_{i+2}^q - x_{i+1}^q x_{i+2}` (indices mod 3).
    CyclicPartials,
    NormalForm(NormalFormClause),
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::FnOver(q) => write!(f, "fn_over({q})"),
            Property::F10Zero(q) => write!(f, "f10_zero({q})"),
            Property::F10Power { q, e } => write!(f, "f10_power({q}, {e})"),
            Property::F10X0Power(q) => write!(f, "f10_x0_power({q})"),
            Property::SpaceFilling => write!(f, "space_filling"),
            Property::Smooth => write!(f, "smooth"),
            Property::Singular => write!(f, "singular"),
            Property::Pointless => write!(f, "pointless"),
            Property::Hermitian => write!(f, "hermitian"),
            Property::SeparatedVariables => write!(f, "separated_variables"),
            Property::NotSeparated => write!(f, "not_separated"),
            Property::HessianDetZero => write!(f, "hessian_det_zero"),
            Property::CyclicPartials => write!(f, "cyclic_partials"),
            Property::NormalForm(c) => write!(f, "normal_form({})", c.name()),
        }
    }
}

/// Outcome of checking one property.
#[derive(Clone, Debug)]
pub struct PropertyCheck {
    pub property: Property,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub id: &'static str,
    pub poly: HomogPoly,
    pub params: Value,
    pub properties: Vec<Property>,
}

impl FamilyInstance {
    fn new(id: &'static str, poly: HomogPoly, params: Value, properties: Vec<Property>) -> Self {
        FamilyInstance {
            id,
            poly,
            params,
            properties,
        }
    }

    pub fn has(&self, p: Property) -> bool {
        self.properties.contains(&p)
    }

    /// Runs every asserted property through frobcore and analysis.
    pub fn verify(&self) -> Result<Vec<PropertyCheck>, FamilyError> {
        self.properties
            .iter()
            .map(|&p| check_property(&self.poly, p))
            .collect()
    }

    pub fn manifest(&self) -> Value {
        json!({
            "family": self.id,
            "field": self.poly.field().header(),
            "n": self.poly.nvars() - 1,
            "degree": self.poly.degree(),
            "polynomial": self.poly.to_string(),
            "params": self.params,
            "properties": self.properties.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })
    }
}

pub fn check_property(poly: &HomogPoly, p: Property) -> Result<PropertyCheck, FamilyError> {
    let field = poly.field();
    let q = field.order() as u64;
    let (passed, detail) = match p {
        Property::FnOver(qq) => {
            let c = is_frobenius_nonclassical(poly, qq)?;
            (c.nonclassical, format!("f10 kind {}", c.kind.name()))
        }
        Property::F10Zero(qq) => {
            let z = compute_fab(poly, 1, 0, qq)?.is_zero();
            (z, String::new())
        }
        Property::F10Power { q: qq, e } => {
            let c = is_frobenius_nonclassical(poly, qq)?;
            let ok = matches!(c.kind, F10Kind::ScalarPower { e: ee, .. } if ee == e);
            (ok, format!("f10 kind {}", c.kind.name()))
        }
        Property::F10X0Power(qq) => {
            let f10 = compute_fab(poly, 1, 0, qq)?;
            let x0 = HomogPoly::monomial(field, Elem::ONE, &unit(poly.nvars(), 0, (qq - 1) as u32));
            (x0.mul(poly)? == f10, String::new())
        }
        Property::SpaceFilling | Property::Pointless => {
            let c = count_points(poly, 1)?;
            let amb = point_count(poly.nvars() - 1, q);
            let ok = if p == Property::SpaceFilling { c == amb } else { c == 0 };
            (ok, format!("{c} of {amb} points"))
        }
        Property::Smooth | Property::Singular => {
            let v = best_smoothness(poly, 3)?;
            let ok = if p == Property::Smooth {
                v.smooth
            } else {
                !v.smooth && v.exact
            };
            (ok, v.label().to_string())
        }
        Property::Hermitian => {
            let v = is_hermitian_hypersurface(poly, q)?;
            (v.hermitian, String::new())
        }
        Property::SeparatedVariables | Property::NotSeparated => {
            let s = separated_variables_detect(poly).is_some();
            let ok = if p == Property::SeparatedVariables { s } else { !s };
            (ok, "in current coordinates".into())
        }
        Property::HessianDetZero => (hessian_determinant(poly)?.is_zero(), String::new()),
        Property::CyclicPartials => (cyclic_partials(poly)?, String::new()),
        Property::NormalForm(c) => (normal_form_match(poly, c)?.matched, String::new()),
    };
    Ok(PropertyCheck {
        property: p,
        passed,
        detail,
    })
}

fn unit(n: usize, i: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = e;
    v
}

fn mono(field: &Field, c: Elem, e: &[u32]) -> HomogPoly {
    HomogPoly::monomial(field, c, e)
}

/// Determinant of the matrix of second partial derivatives, expanded along
/// the first row.
pub fn hessian_determinant(poly: &HomogPoly) -> Result<HomogPoly, FamilyError> {
    let n = poly.nvars();
    let grad = poly.gradient();
    let mut h = Vec::with_capacity(n);
    for g in &grad {
        let row: Vec<HomogPoly> = (0..n).map(|j| g.partial_derivative(j)).collect::<Result<_, _>>()?;
        h.push(row);
    }
    let cols: Vec<usize> = (0..n).collect();
    poly_det(&h, 0, &cols)
}

fn poly_det(m: &[Vec<HomogPoly>], row: usize, cols: &[usize]) -> Result<HomogPoly, FamilyError> {
    if cols.len() == 1 {
        return Ok(m[row][cols[0]].clone());
    }
    let field = m[0][0].field();
    let mut acc: Option<HomogPoly> = None;
    for (k, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = poly_det(m, row + 1, &rest)?;
        let mut term = m[row][c].mul(&minor)?;
        if k % 2 == 1 {
            term = term.scale(field.neg(Elem::ONE));
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.unwrap())
}

fn cyclic_partials(poly: &HomogPoly) -> Result<bool, FamilyError> {
    if poly.nvars() != 3 {
        return Ok(false);
    }
    let f = poly.field();
    let q = poly.degree() as u32 - 2;
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let mut a = vec![0; 3];
        a[j] = 1;
        a[k] = q;
        let mut b = vec![0; 3];
        b[j] = q;
        b[k] = 1;
        let want = mono(f, Elem::ONE, &a).sub(&mono(f, Elem::ONE, &b))?;
        if poly.partial_derivative(i)? != want {
            return Ok(false);
        }
    }
    Ok(true)
}

fn matrix_json(m: &Matrix) -> Value {
    let f = m.field();
    m.rows()
        .iter()
        .map(|r| r.iter().map(|&c| format_elem_literal(f, c)).collect::<Vec<_>>())
        .collect()
}

fn is_skew_zero_diag(m: &Matrix) -> bool {
    let f = m.field();
    let n = m.nrows();
    (0..n).all(|i| {
        m.get(i, i).is_zero() && (0..n).all(|j| m.get(i, j) == f.neg(m.get(j, i)))
    })
}

/// `sum_i (x_{2i}^q x_{2i+1} - x_{2i} x_{2i+1}^q)` as a matrix.
pub fn standard_symplectic(field: &Field, size: usize) -> Matrix {
    let mut a = Matrix::zeros(field, size, size);
    for i in (0..size.saturating_sub(1)).step_by(2) {
        a.set(i, i + 1, Elem::ONE);
        a.set(i + 1, i, field.neg(Elem::ONE));
    }
    a
}

/// `F = sum_ij x_i^q A_ij x_j` for a nondegenerate skew matrix `A` with
/// zero diagonal over `F_q`.
pub fn gen_skew_form(a: &Matrix) -> Result<FamilyInstance, FamilyError> {
    let field = a.field();
    let q = field.order() as u64;
    if !a.is_square() {
        return Err(FamilyError::InvalidParameters("matrix is not square".into()));
    }
    if a.nrows() % 2 == 1 {
        return Err(FamilyError::OddSize(a.nrows()));
    }
    if !is_skew_zero_diag(a) {
        return Err(FamilyError::NotSkew);
    }
    if a.det().is_zero() {
        return Err(FamilyError::Degenerate);
    }
    let poly = SesquiMatrix::new(a.clone(), q)?.to_poly();
    let mut props = vec![
        Property::F10Zero(q),
        Property::FnOver(q),
        Property::Smooth,
        Property::SpaceFilling,
        Property::NormalForm(NormalFormClause::SkewQPlus1),
    ];
    if q * q <= crate::gf::MAX_FIELD_ORDER {
        props.insert(2, Property::FnOver(q * q));
    }
    Ok(FamilyInstance::new(
        "skew-form",
        poly,
        json!({ "q": q, "n": a.nrows() - 1, "matrix": matrix_json(a) }),
        props,
    ))
}

/// The skew form of the standard symplectic matrix in `P^n`, `n` odd.
pub fn gen_space_filling(field: &Field, n: usize) -> Result<FamilyInstance, FamilyError> {
    let mut inst = gen_skew_form(&standard_symplectic(field, n + 1))?;
    inst.id = "space-filling";
    Ok(inst)
}

fn sqrt_order(field: &Field) -> Result<u64, FamilyError> {
    field
        .sqrt_order()
        .map(|s| s as u64)
        .ok_or(FamilyError::NotASquare(field.order() as u64))
}

/// `sum_{i <= r} x_i^{sqrt q + 1}` in `P^n` over a field of square order.
pub fn gen_hermitian(field: &Field, n: usize, r: usize) -> Result<FamilyInstance, FamilyError> {
    let s = sqrt_order(field)?;
    if r > n {
        return Err(FamilyError::InvalidParameters(format!("r = {r} exceeds n = {n}")));
    }
    let q = field.order() as u64;
    let mut acc = HomogPoly::zero(field, n + 1, s + 1);
    for i in 0..=r {
        acc = acc.add(&mono(field, Elem::ONE, &unit(n + 1, i, s as u32 + 1)))?;
    }
    let mut props = vec![
        Property::FnOver(q),
        Property::F10Power { q, e: s },
        Property::Hermitian,
    ];
    props.push(if r == n { Property::Smooth } else { Property::Singular });
    Ok(FamilyInstance::new(
        "hermitian",
        acc,
        json!({ "q": q, "n": n, "r": r }),
        props,
    ))
}

/// `x-bar H x^t` for a nonzero Hermitian matrix `H`.
pub fn gen_hermitian_from_matrix(h: &Matrix) -> Result<FamilyInstance, FamilyError> {
    let field = h.field();
    let s = sqrt_order(field)?;
    let q = field.order() as u64;
    let sm = SesquiMatrix::new(h.clone(), s)?;
    if h.is_zero() || !hermitian_tests(&sm)?.is_hermitian {
        return Err(FamilyError::NotHermitianMatrix);
    }
    let poly = sm.to_poly();
    let mut props = vec![
        Property::FnOver(q),
        Property::F10Power { q, e: s },
        Property::Hermitian,
    ];
    props.push(if h.det().is_zero() {
        Property::Singular
    } else {
        Property::Smooth
    });
    Ok(FamilyInstance::new(
        "hermitian",
        poly,
        json!({ "q": q, "n": h.nrows() - 1, "matrix": matrix_json(h) }),
        props,
    ))
}

/// `F = x_0 G + sum_{i,j >= 1} x_i^q B_ij x_j` in characteristic 2 with `n`
/// even. Nonclassicality is asserted only when `F_{1,0} = x_0^{q-1} F`
/// actually holds.
pub fn gen_char2_even_n(g: &HomogPoly, b: &Matrix) -> Result<FamilyInstance, FamilyError> {
    let field = g.field();
    if field.characteristic() != 2 {
        return Err(FamilyError::WrongCharacteristic(field.characteristic()));
    }
    let q = field.order() as u64;
    let nv = g.nvars();
    let n = nv - 1;
    if n % 2 == 1 {
        return Err(FamilyError::OddN(n));
    }
    if g.degree() != q {
        return Err(FamilyError::BadG(format!("degree {} is not q = {q}", g.degree())));
    }
    if !g.partial_derivative(0)?.is_zero() {
        return Err(FamilyError::BadG("dG/dx0 is not zero".into()));
    }
    if b.nrows() != n || !b.is_square() || b.field() != field {
        return Err(FamilyError::InvalidParameters(format!("B must be {n}x{n} over the same field")));
    }
    if !is_skew_zero_diag(b) {
        return Err(FamilyError::NotSkew);
    }
    if b.det().is_zero() {
        return Err(FamilyError::Degenerate);
    }
    let mut big = Matrix::zeros(field, nv, nv);
    for i in 0..n {
        for j in 0..n {
            big.set(i + 1, j + 1, b.get(i, j));
        }
    }
    let tail = SesquiMatrix::new(big, q)?.to_poly();
    let x0 = mono(field, Elem::ONE, &unit(nv, 0, 1));
    let poly = x0.mul(g)?.add(&tail)?;
    let x0_identity = check_property(&poly, Property::F10X0Power(q))?.passed;
    let mut props = Vec::new();
    if x0_identity {
        props.extend([
            Property::FnOver(q),
            Property::F10X0Power(q),
            Property::NormalForm(NormalFormClause::Char2Even),
        ]);
    }
    Ok(FamilyInstance::new(
        "char2-even",
        poly,
        json!({ "q": q, "n": n, "g": g.to_string(), "b": matrix_json(b), "x0_identity": x0_identity }),
        props,
    ))
}

/// The plane quintic over `F_4` with `F_{1,0} = x_0^3 F` and a Hessian
/// matrix of zero determinant.
pub fn char2_even_f4() -> Result<FamilyInstance, FamilyError> {
    let f4 = make_field(2, 2, None)?;
    let g = parse_poly(
        "(a+1)*x0^4 + x0^2*x1^2 + x0^2*x1*x2 + x0^2*x2^2 + x1^4 + x1^2*x2^2 + x2^4",
        &f4,
        3,
    )?;
    let b = Matrix::from_ints(&f4, &[&[0, 1], &[1, 0]]);
    let mut inst = gen_char2_even_n(&g, &b)?;
    if !inst.has(Property::F10X0Power(4)) {
        return Err(FamilyError::VerificationFailure("F_{1,0} = x0^3 F fails".into()));
    }
    inst.properties.extend([Property::Smooth, Property::HessianDetZero]);
    inst.params["builtin"] = json!("f4");
    Ok(inst)
}

/// `x_0 x_1 x_2 (x_0^{q-1} + x_1^{q-1} + x_2^{q-1}) + G(x_0^2, x_1^2, x_2^2)`
/// for `q` a power of 2 and `G` of degree `(q + 2) / 2`.
pub fn gen_q_plus_2(g: &HomogPoly) -> Result<FamilyInstance, FamilyError> {
    let field = g.field();
    if field.characteristic() != 2 {
        return Err(FamilyError::WrongCharacteristic(field.characteristic()));
    }
    if g.nvars() != 3 {
        return Err(FamilyError::InvalidParameters("G must be in three variables".into()));
    }
    let q = field.order() as u64;
    if g.degree() != (q + 2) / 2 {
        return Err(FamilyError::BadG(format!("degree {} is not (q+2)/2 = {}", g.degree(), (q + 2) / 2)));
    }
    let qe = q as u32;
    let mut poly = HomogPoly::zero(field, 3, q + 2);
    for e in [[qe, 1, 1], [1, qe, 1], [1, 1, qe]] {
        poly = poly.add(&mono(field, Elem::ONE, &e))?;
    }
    let terms: Vec<(Monomial, Elem)> = g.terms().map(|(m, &c)| (m.scale_exps(2), c)).collect();
    poly = poly.add(&HomogPoly::from_terms(field, 3, q + 2, terms)?)?;
    Ok(FamilyInstance::new(
        "q-plus-2",
        poly,
        json!({ "q": q, "g": g.to_string() }),
        vec![
            Property::F10Zero(q),
            Property::FnOver(q),
            Property::NormalForm(NormalFormClause::QPlus2),
        ],
    ))
}

/// Names of the built-in degree `q + 2` curves.
pub const Q_PLUS_2_BUILTINS: [&str; 3] = ["dgz", "f4", "f8"];

/// The built-in smooth degree `q + 2` curves: `dgz` over `F_2` and the
/// curves over `F_4` and `F_8`.
pub fn q_plus_2_builtin(name: &str) -> Result<FamilyInstance, FamilyError> {
    let (k, g) = match name {
        "dgz" => (1, "x0^2 + x0*x1 + x1^2 + x0*x2 + x1*x2 + x2^2"),
        "f4" => (2, "(a+1)*x0^3 + x0^2*x1 + x0*x1^2 + x1^3 + x1^2*x2 + x1*x2^2 + a*x2^3"),
        "f8" => (
            3,
            "a^2*x0^5 + x0^3*x1^2 + x0^2*x1^3 + (a+1)*x1^5 + (a^2+1)*x0^4*x2 + x0^2*x1^2*x2 \
             + a*x1^4*x2 + x0^3*x2^2 + x0*x1^2*x2^2 + x1^3*x2^2 + x0^2*x2^3 + x1^2*x2^3 \
             + (a^2+1)*x0*x2^4 + a*x1*x2^4 + a*x2^5",
        ),
        other => return Err(FamilyError::InvalidParameters(format!("unknown builtin {other}"))),
    };
    let field = make_field(2, k, None)?;
    let g = parse_poly(g, &field, 3)?;
    let mut inst = gen_q_plus_2(&g)?;
    inst.properties.extend([
        Property::Smooth,
        Property::Pointless,
        Property::CyclicPartials,
        Property::NotSeparated,
    ]);
    inst.params["builtin"] = json!(name);
    Ok(inst)
}

/// `prod_i (alpha_0^{q^i} x_0 + ... + alpha_n^{q^i} x_n)` for a basis of
/// `F_{q^{n+1}}` over `F_q = base`, with coefficients brought down to `F_q`.
pub fn gen_norm_hypersurface(base: &Field, ext: &Field, basis: &[Elem]) -> Result<FamilyInstance, FamilyError> {
    let n1 = basis.len();
    if n1 < 2 {
        return Err(FamilyError::InvalidParameters("need n >= 1".into()));
    }
    let q = base.order() as u64;
    let expect = (q as u128).pow(n1 as u32);
    if ext.order() as u128 != expect {
        return Err(FamilyError::InvalidParameters(format!(
            "extension has order {}, expected q^(n+1) = {expect}",
            ext.order()
        )));
    }
    Embedding::between(base, ext)?;
    let k = base.degree();
    let rows: Vec<Vec<Elem>> = (0..n1)
        .map(|i| basis.iter().map(|&a| ext.frobenius_pow(a, k * i as u32)).collect())
        .collect();
    if Matrix::from_rows(ext, &rows).det().is_zero() {
        return Err(FamilyError::NotABasis);
    }
    let mut g = HomogPoly::monomial(ext, Elem::ONE, &vec![0; n1]);
    for r in &rows {
        g = g.mul(&HomogPoly::linear(ext, r))?;
    }
    let poly = g
        .restrict_to(base)
        .ok_or_else(|| FamilyError::VerificationFailure("norm form has coefficients outside F_q".into()))?;
    Ok(FamilyInstance::new(
        "norm-pointless",
        poly,
        json!({
            "q": q,
            "n": n1 - 1,
            "basis": basis.iter().map(|&a| format_elem_literal(ext, a)).collect::<Vec<_>>(),
        }),
        vec![Property::Pointless],
    ))
}

/// The norm form for the basis `1, a, ..., a^n` of the default extension.
pub fn norm_hypersurface_default(base: &Field, n: usize) -> Result<FamilyInstance, FamilyError> {
    let ext = base.extension(n as u32 + 1)?;
    let a = ext.generator();
    let basis: Vec<Elem> = (0..=n).map(|i| ext.pow(a, i as u64)).collect();
    gen_norm_hypersurface(base, &ext, &basis)
}

/// `sum_i x_i^{q-1}`. Requires `p` not dividing `n + 1`; pointlessness is
/// then checked by enumeration, since it holds exactly when `n + 1 < p`.
pub fn gen_pointless_diagonal(field: &Field, n: usize) -> Result<FamilyInstance, FamilyError> {
    let p = field.characteristic() as usize;
    if (n + 1) % p == 0 {
        return Err(FamilyError::BadDimension(n + 1));
    }
    let q = field.order() as u64;
    if q < 3 {
        return Err(FamilyError::InvalidParameters("q - 1 must be at least 2".into()));
    }
    let mut poly = HomogPoly::zero(field, n + 1, q - 1);
    for i in 0..=n {
        poly = poly.add(&mono(field, Elem::ONE, &unit(n + 1, i, q as u32 - 1)))?;
    }
    let c = count_points(&poly, 1)?;
    if c != 0 {
        return Err(FamilyError::VerificationFailure(format!(
            "sum x_i^(q-1) has {c} points in P^{n}(F_{q})"
        )));
    }
    Ok(FamilyInstance::new(
        "diagonal-pointless",
        poly,
        json!({ "q": q, "n": n }),
        vec![Property::Pointless],
    ))
}

/// `G^p` for a pointless `G`: Frobenius nonclassical with `F_{1,0} = 0`
/// yet without `F_q`-points.
pub fn pth_power_of(inst: &FamilyInstance) -> Result<FamilyInstance, FamilyError> {
    let field = inst.poly.field();
    let q = field.order() as u64;
    let poly = inst.poly.pow(field.characteristic() as u64)?;
    let mut params = inst.params.clone();
    params["pth_power"] = json!(true);
    let mut props = vec![Property::F10Zero(q), Property::FnOver(q)];
    if inst.has(Property::Pointless) {
        props.push(Property::Pointless);
    }
    Ok(FamilyInstance::new(inst.id, poly, params, props))
}

/// `G(x_0, ..., x_m) + H(x_{m+1}, ..., x_n)`; `g` has `m + 1` variables
/// and `h` has `n - m`.
pub fn gen_separated(g: &HomogPoly, h: &HomogPoly) -> Result<FamilyInstance, FamilyError> {
    if g.degree() != h.degree() {
        return Err(FamilyError::DegreeMismatch(g.degree(), h.degree()));
    }
    if g.field() != h.field() {
        return Err(FamilyError::InvalidParameters("G and H over different fields".into()));
    }
    let field = g.field();
    let (a, b) = (g.nvars(), h.nvars());
    let nv = a + b;
    let shift = |p: &HomogPoly, off: usize| -> Result<HomogPoly, FamilyError> {
        let terms: Vec<(Monomial, Elem)> = p
            .terms()
            .map(|(m, &c)| {
                let mut e = vec![0; nv];
                e[off..off + p.nvars()].copy_from_slice(m.exps());
                (Monomial::new(&e), c)
            })
            .collect();
        Ok(HomogPoly::from_terms(field, nv, p.degree(), terms)?)
    };
    let poly = shift(g, 0)?.add(&shift(h, a)?)?;
    let mut props = Vec::new();
    if !g.is_zero() && !h.is_zero() {
        props.push(Property::SeparatedVariables);
    }
    Ok(FamilyInstance::new(
        "separated",
        poly,
        json!({ "m": a - 1, "g": g.to_string(), "h": h.to_string() }),
        props,
    ))
}

/// `sum_i x_i^{q^r + ... + q + 1}` over `F_{q^{r+1}}`: smooth, nonclassical
/// with `F_{1,0} = F^q`, separated.
pub fn gen_fermat_type(p: u64, e: u32, r: u32, n: usize) -> Result<FamilyInstance, FamilyError> {
    if r < 1 || n < 1 {
        return Err(FamilyError::InvalidParameters("need r >= 1 and n >= 1".into()));
    }
    let field = make_field(p, e * (r + 1), None)?;
    let q = p.pow(e);
    let big_q = field.order() as u64;
    let d: u64 = (0..=r).map(|i| q.pow(i)).sum();
    let mut poly = HomogPoly::zero(&field, n + 1, d);
    for i in 0..=n {
        poly = poly.add(&mono(&field, Elem::ONE, &unit(n + 1, i, d as u32)))?;
    }
    let mut props = vec![
        Property::FnOver(big_q),
        Property::F10Power { q: big_q, e: q },
        Property::Smooth,
        Property::SeparatedVariables,
    ];
    if r == 1 {
        props.push(Property::Hermitian);
    }
    Ok(FamilyInstance::new(
        "separated",
        poly,
        json!({ "q": q, "r": r, "n": n, "field_order": big_q }),
        props,
    ))
}

/// Family identifiers accepted by the command line.
pub const FAMILY_IDS: [&str; 8] = [
    "space-filling",
    "skew-form",
    "hermitian",
    "char2-even",
    "q-plus-2",
    "norm-pointless",
    "diagonal-pointless",
    "separated",
];

#[cfg(test)]
mod tests;

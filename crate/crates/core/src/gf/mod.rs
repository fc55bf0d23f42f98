//! Finite fields `F_{p^k}` with table-driven arithmetic.
//!
//! A [`Field`] is a cheap handle to immutable shared tables. Elements are
//! encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where the `c_i`
//! are the coefficients of the residue class modulo the defining modulus;
//! [`Elem`] is that raw encoding and is only meaningful together with the
//! field it came from. [`FieldElement`] pairs the two and refuses to mix
//! fields.
//!
//! Fields with identical `(p, k, modulus)` are interned, so two calls to
//! [`make_field`] with the same arguments return the same handle.

mod embed;
pub(crate) mod fp_poly;
mod matrix;

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

pub use embed::Embedding;
pub use matrix::Matrix;
pub(crate) use matrix::rank_in_place;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus {0:?} is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus(Vec<u32>),
    #[error("field order {0} exceeds the supported maximum of 2^16")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("field of order {0} is not a square-order field")]
    NotASquareField(u32),
    #[error("no embedding from {0} into {1}")]
    IncompatibleFields(String, String),
    #[error("coefficient vector {0:?} is not valid for this field")]
    BadCoefficients(Vec<u32>),
}

/// Raw element encoding; see the module docs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldInner {
    id: usize,
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2(q-1), g a fixed multiplicative generator.
    exp: Vec<u32>,
    /// log[x] for x != 0; log[0] is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// A finite field `F_{p^k}`.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.header())
    }
}

fn registry() -> &'static Mutex<Vec<Field>> {
    static REG: OnceLock<Mutex<Vec<Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(Vec::new()))
}

/// Builds (or fetches the interned copy of) the field `F_{p^k}`.
///
/// With no modulus, the Conway polynomial of degree `k` is used, which for
/// `F_4` and `F_8` gives the generators `a^2 + a + 1 = 0` and
/// `a^3 + a + 1 = 0`. A supplied modulus is given constant term first and
/// must be monic of degree `k` and irreducible.
pub fn make_field(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Field, GfError> {
    if !fp_poly::is_prime(p) {
        return Err(GfError::NonPrimeCharacteristic(p));
    }
    if k == 0 {
        return Err(GfError::ZeroDegree);
    }
    let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    if q > MAX_FIELD_ORDER as u128 {
        return Err(GfError::FieldTooLarge(q.min(u64::MAX as u128) as u64));
    }
    let p = p as u32;
    let q = q as u32;
    let modulus: Vec<u32> = match modulus {
        Some(m) => {
            let ok = m.len() == k as usize + 1
                && m[k as usize] == 1
                && m.iter().all(|&c| c < p)
                && fp_poly::is_irreducible(m, p);
            if !ok {
                return Err(GfError::ReducibleModulus(m.to_vec()));
            }
            m.to_vec()
        }
        None => fp_poly::conway(p, k),
    };

    let mut reg = registry().lock().unwrap();
    if let Some(f) = reg
        .iter()
        .find(|f| f.0.p == p && f.0.k == k && f.0.modulus == modulus)
    {
        return Ok(f.clone());
    }
    let inner = build_tables(reg.len(), p, k, q, modulus);
    let field = Field(Arc::new(inner));
    reg.push(field.clone());
    Ok(field)
}

fn encode(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

fn build_tables(id: usize, p: u32, k: u32, q: u32, modulus: Vec<u32>) -> FieldInner {
    let order = q as u64 - 1;
    // Find a generator: x itself when the modulus is primitive, otherwise
    // the first element (in encoding order) of full order.
    let decode = |mut v: u32| -> Vec<u32> {
        let mut c = Vec::with_capacity(k as usize);
        for _ in 0..k {
            c.push(v % p);
            v /= p;
        }
        fp_poly::trim(c)
    };
    let gen: Vec<u32> = if q == 2 {
        vec![1]
    } else {
        let x = fp_poly::rem(&[0, 1], &modulus, p);
        if fp_poly::is_generator(&x, &modulus, p, q as u64) {
            x
        } else {
            (2..q)
                .map(decode)
                .find(|g| fp_poly::is_generator(g, &modulus, p, q as u64))
                .expect("multiplicative group is cyclic")
        }
    };
    let mut exp = Vec::with_capacity(2 * order as usize);
    let mut log = vec![0u32; q as usize];
    let mut cur: Vec<u32> = vec![1];
    for i in 0..order {
        let mut padded = cur.clone();
        padded.resize(k as usize, 0);
        let e = encode(&padded, p);
        exp.push(e);
        log[e as usize] = i as u32;
        cur = fp_poly::mulmod(&cur, &gen, &modulus, p);
    }
    for i in 0..order as usize {
        exp.push(exp[i]);
    }
    let digit_add = |a: u32, b: u32, sign: bool| -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..k {
            let (da, db) = (a % p, b % p);
            let d = if sign { (da + db) % p } else { (da + p - db) % p };
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    };
    let neg: Vec<u32> = (0..q).map(|a| digit_add(0, a, false)).collect();
    let add = if q <= ADD_TABLE_LIMIT {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                t[(a * q + b) as usize] = digit_add(a, b, true);
            }
        }
        Some(t)
    } else {
        None
    };
    FieldInner {
        id,
        p,
        k,
        q,
        modulus,
        exp,
        log,
        neg,
        add,
    }
}

impl Field {
    pub(crate) fn id(&self) -> usize {
        self.0.id
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    /// The field order `q = p^k`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Defining modulus, constant term first (monic, length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The header line `p=.. k=.. mod=[..]` used by the text formats.
    pub fn header(&self) -> String {
        let m: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        format!("p={} k={} mod=[{}]", self.0.p, self.0.k, m.join(","))
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// The residue class of the generator `a` (the class of `x` modulo the
    /// defining polynomial). For prime fields this is the integer 0.
    pub fn generator(&self) -> Elem {
        if self.0.k == 1 {
            Elem::ZERO
        } else {
            Elem(self.0.p)
        }
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.0 < self.0.q
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Elem, GfError> {
        if c.len() > self.0.k as usize || c.iter().any(|&d| d >= self.0.p) {
            return Err(GfError::BadCoefficients(c.to_vec()));
        }
        Ok(Elem(encode(c, self.0.p)))
    }

    pub fn coeffs(&self, e: Elem) -> Vec<u32> {
        let mut v = e.0;
        (0..self.0.k)
            .map(|_| {
                let d = v % self.0.p;
                v /= self.0.p;
                d
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if let Some(t) = &inner.add {
            return Elem(t[(a.0 * inner.q + b.0) as usize]);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..inner.k {
            out += ((x % inner.p + y % inner.p) % inner.p) * place;
            place *= inner.p;
            x /= inner.p;
            y /= inner.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        Elem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, GfError> {
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        let inner = &*self.0;
        let l = inner.log[a.0 as usize];
        Ok(Elem(inner.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        let ord = (inner.q - 1) as u64;
        let l = inner.log[a.0 as usize] as u64;
        Elem(inner.exp[((l * (e % ord)) % ord) as usize])
    }

    /// `a^(p^j)`; the `j`-th power of the absolute Frobenius.
    pub fn frobenius_pow(&self, a: Elem, j: u32) -> Elem {
        let e = (self.0.p as u64).pow(j % self.0.k);
        self.pow(a, e)
    }

    /// `a^sqrt(q)`, the involution behind Hermitian forms; needs `k` even.
    pub fn conjugate(&self, a: Elem) -> Result<Elem, GfError> {
        if self.0.k % 2 != 0 {
            return Err(GfError::NotASquareField(self.0.q));
        }
        Ok(self.frobenius_pow(a, self.0.k / 2))
    }

    /// `sqrt(q)` when `q` is a square.
    pub fn sqrt_order(&self) -> Option<u32> {
        (self.0.k % 2 == 0).then(|| self.0.p.pow(self.0.k / 2))
    }

    /// Whether `a` lies in the subfield of order `p^j` (`j` must divide `k`).
    pub fn in_subfield(&self, a: Elem, j: u32) -> bool {
        self.frobenius_pow(a, j) == a
    }

    /// The p-th root, which exists and is unique in a finite field.
    pub fn pth_root(&self, a: Elem) -> Elem {
        self.frobenius_pow(a, self.0.k - 1)
    }

    /// Discrete logarithm base the internal generator (nonzero input).
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize])
    }

    /// Element with the given discrete logarithm.
    pub fn exp(&self, l: u64) -> Elem {
        Elem(self.0.exp[(l % (self.0.q as u64 - 1)) as usize])
    }

    /// All elements in canonical order (by encoding: zero, one, then the
    /// rest colexicographically on coefficient vectors).
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.0.q).map(Elem)
    }

    /// The extension `F_{q^m}` built on the default modulus.
    pub fn extension(&self, m: u32) -> Result<Field, GfError> {
        make_field(self.0.p as u64, self.0.k * m, None)
    }

    /// Human-readable element, as a polynomial in the generator `a`.
    pub fn format_elem(&self, e: Elem) -> String {
        if self.0.k == 1 || e.0 < self.0.p {
            return e.0.to_string();
        }
        let c = self.coeffs(e);
        let mut parts = Vec::new();
        for (i, &d) in c.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            parts.push(match (d, i) {
                (_, 0) => d.to_string(),
                (1, _) => var,
                _ => format!("{d}*{var}"),
            });
        }
        parts.join("+")
    }

    pub fn element(&self, e: Elem) -> FieldElement {
        debug_assert!(self.contains(e));
        FieldElement {
            field: self.clone(),
            value: e,
        }
    }

    pub(crate) fn check_same(&self, other: &Field) -> Result<(), GfError> {
        if self == other {
            Ok(())
        } else {
            Err(GfError::FieldMismatch(self.header(), other.header()))
        }
    }
}

/// All elements of `field`, in canonical order.
pub fn enumerate_field(field: &Field) -> Vec<FieldElement> {
    field.elements().map(|e| field.element(e)).collect()
}

/// An element tagged with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.field.format_elem(self.value), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_elem(self.value))
    }
}

/// Binary and unary operations accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(u64),
}

/// Checked arithmetic on tagged elements. Binary ops take two operands,
/// unary ops (`Neg`, `Inv`, `Pow`) take one.
pub fn field_arith(op: ArithOp, operands: &[&FieldElement]) -> Result<FieldElement, GfError> {
    let a = operands[0];
    match op {
        ArithOp::Neg => Ok(a.neg()),
        ArithOp::Inv => a.inv(),
        ArithOp::Pow(e) => Ok(a.pow(e)),
        ArithOp::Add => a.add(operands[1]),
        ArithOp::Sub => a.sub(operands[1]),
        ArithOp::Mul => a.mul(operands[1]),
        ArithOp::Div => a.div(operands[1]),
    }
}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> Self {
        field.element(value)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn with(&self, v: Elem) -> Self {
        FieldElement {
            field: self.field.clone(),
            value: v,
        }
    }

    pub fn add(&self, o: &FieldElement) -> Result<Self, GfError> {
        self.field.check_same(&o.field)?;
        Ok(self.with(self.field.add(self.value, o.value)))
    }

    pub fn sub(&self, o: &FieldElement) -> Result<Self, GfError> {
        self.field.check_same(&o.field)?;
        Ok(self.with(self.field.sub(self.value, o.value)))
    }

    pub fn mul(&self, o: &FieldElement) -> Result<Self, GfError> {
        self.field.check_same(&o.field)?;
        Ok(self.with(self.field.mul(self.value, o.value)))
    }

    pub fn div(&self, o: &FieldElement) -> Result<Self, GfError> {
        self.field.check_same(&o.field)?;
        Ok(self.with(self.field.div(self.value, o.value)?))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self, GfError> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }

    pub fn frobenius_pow(&self, j: u32) -> Self {
        self.with(self.field.frobenius_pow(self.value, j))
    }

    pub fn conjugate(&self) -> Result<Self, GfError> {
        Ok(self.with(self.field.conjugate(self.value)?))
    }

    /// Image under the fixed embedding into `target`.
    pub fn embed(&self, target: &Field) -> Result<Self, GfError> {
        let emb = Embedding::between(&self.field, target)?;
        Ok(target.element(emb.apply(self.value)))
    }
}

//! Dense univariate polynomials over a finite field or over a finite
//! extension presented as a quotient ring `F_q[x]/(pi)`.
//!
//! Coefficients are stored constant term first with no trailing zeros.

use std::fmt::Debug;

use crate::gf::{Elem, Field, Matrix};

/// The operations a coefficient ring must supply.
pub trait FieldOps: Clone {
    type E: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_int(&self, n: i64) -> Self::E;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
}

impl FieldOps for Field {
    type E = Elem;
    fn zero(&self) -> Elem {
        Elem::ZERO
    }
    fn one(&self) -> Elem {
        Elem::ONE
    }
    fn is_zero(&self, a: &Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Field::add(self, *a, *b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        Field::neg(self, *a)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Field::mul(self, *a, *b)
    }
    fn inv(&self, a: &Elem) -> Elem {
        Field::inv(self, *a).expect("inverse of zero")
    }
    fn from_int(&self, n: i64) -> Elem {
        Field::from_int(self, n)
    }
}

/// `F_q[x]/(pi)` for a monic irreducible `pi`; elements are residues of
/// degree below `deg pi`. This reaches extension degrees beyond the table
/// cap of [`Field`].
#[derive(Clone, Debug)]
pub struct ModExt {
    base: Field,
    modulus: UPoly<Field>,
}

impl ModExt {
    pub fn new(base: &Field, modulus: UPoly<Field>) -> Self {
        assert!(modulus.degree().unwrap_or(0) >= 1, "modulus must be nonconstant");
        ModExt {
            base: base.clone(),
            modulus: modulus.monic(),
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// The class of `x`.
    pub fn generator(&self) -> UPoly<Field> {
        UPoly::x(&self.base).rem(&self.modulus)
    }

    pub fn embed(&self, c: Elem) -> UPoly<Field> {
        UPoly::constant(&self.base, c)
    }
}

impl FieldOps for ModExt {
    type E = UPoly<Field>;
    fn zero(&self) -> Self::E {
        UPoly::zero(&self.base)
    }
    fn one(&self) -> Self::E {
        UPoly::constant(&self.base, Elem::ONE)
    }
    fn is_zero(&self, a: &Self::E) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E {
        a.add(b)
    }
    fn neg(&self, a: &Self::E) -> Self::E {
        a.neg()
    }
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        a.mul(b).rem(&self.modulus)
    }
    fn inv(&self, a: &Self::E) -> Self::E {
        let (g, s, _) = a.ext_gcd(&self.modulus);
        assert!(g.degree() == Some(0), "inverse of a non-unit");
        let c = self.base.inv(g.coeffs[0]).unwrap();
        s.scale(&c).rem(&self.modulus)
    }
    fn from_int(&self, n: i64) -> Self::E {
        UPoly::constant(&self.base, self.base.from_int(n))
    }
}

#[derive(Clone, Debug)]
pub struct UPoly<F: FieldOps> {
    ring: F,
    coeffs: Vec<F::E>,
}

impl<F: FieldOps> PartialEq for UPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: FieldOps> UPoly<F> {
    pub fn new(ring: &F, coeffs: Vec<F::E>) -> Self {
        let mut p = UPoly {
            ring: ring.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(ring: &F) -> Self {
        UPoly {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ring: &F, c: F::E) -> Self {
        Self::new(ring, vec![c])
    }

    pub fn x(ring: &F) -> Self {
        Self::new(ring, vec![ring.zero(), ring.one()])
    }

    pub fn ring(&self) -> &F {
        &self.ring
    }

    pub fn coeffs(&self) -> &[F::E] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    fn trim(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if self.ring.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F::E> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let r = &self.ring;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| r.add(&self.coeff(i), &o.coeff(i))).collect();
        Self::new(r, c)
    }

    pub fn neg(&self) -> Self {
        let r = &self.ring;
        Self::new(r, self.coeffs.iter().map(|c| r.neg(c)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &F::E) -> Self {
        let r = &self.ring;
        Self::new(r, self.coeffs.iter().map(|a| r.mul(a, c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let r = &self.ring;
        if self.is_zero() || o.is_zero() {
            return Self::zero(r);
        }
        let mut out = vec![r.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        Self::new(r, out)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&self.ring.inv(l)),
        }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let r = &self.ring;
        let dd = d.degree().expect("division by the zero polynomial");
        let linv = r.inv(d.lead().unwrap());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(r), self.clone());
        }
        let mut quot = vec![r.zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = r.mul(&rem[top], &linv);
            if r.is_zero(&c) {
                continue;
            }
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] = r.sub(&rem[shift + i], &r.mul(&c, dc));
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        (Self::new(r, quot), Self::new(r, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s*self + t*o`, `g` not normalized.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let r = &self.ring;
        let (mut a, mut b) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::constant(r, r.one()), Self::zero(r));
        let (mut t0, mut t1) = (Self::zero(r), Self::constant(r, r.one()));
        while !b.is_zero() {
            let (q, rr) = a.divrem(&b);
            a = b;
            b = rr;
            let s2 = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s2;
            let t2 = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t2;
        }
        (a, s0, t0)
    }

    pub fn derivative(&self) -> Self {
        let r = &self.ring;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| r.mul(&r.from_int(i as i64), a))
            .collect();
        Self::new(r, c)
    }

    pub fn eval(&self, x: &F::E) -> F::E {
        let r = &self.ring;
        self.coeffs
            .iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let r = &self.ring;
        let mut acc = Self::constant(r, r.one()).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&b, m);
            }
            b = b.mulmod(&b, m);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let r = &self.ring;
        let mut acc = Self::constant(r, r.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl UPoly<Field> {
    pub fn from_elems(field: &Field, c: &[Elem]) -> Self {
        Self::new(field, c.to_vec())
    }

    pub fn from_ints(field: &Field, c: &[i64]) -> Self {
        Self::new(field, c.iter().map(|&x| field.from_int(x)).collect())
    }

    /// `Some(g)` with `g^p = self` when every exponent is divisible by p.
    pub fn pth_root(&self) -> Option<Self> {
        let f = &self.ring;
        let p = f.characteristic() as usize;
        let mut out = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % p != 0 {
                if !c.is_zero() {
                    return None;
                }
                continue;
            }
            out.push(f.pth_root(c));
        }
        Some(Self::new(f, out))
    }

    /// Monic squarefree factors with multiplicities: `self = lc * prod g_i^{e_i}`
    /// with the `g_i` squarefree, pairwise coprime, and the `e_i` distinct.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let f = &self.ring;
        let p = f.characteristic();
        let mut out: Vec<(Self, u32)> = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let a = self.monic();
        let mut c = a.gcd(&a.derivative());
        let mut w = a.divrem(&c).0;
        let mut i = 1u32;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.divrem(&w).0;
        }
        if c.degree().unwrap_or(0) > 0 {
            let root = c.pth_root().expect("remaining cofactor is a p-th power");
            for (g, e) in root.squarefree_decomposition() {
                out.push((g, e * p));
            }
        }
        out.sort_by_key(|(g, e)| (*e, g.degree()));
        out
    }

    /// Monic irreducible factors of a squarefree polynomial, by Berlekamp's
    /// algorithm with exhaustive splitting over the base field.
    pub fn berlekamp(&self) -> Vec<Self> {
        let f = &self.ring;
        let q = f.order() as u64;
        let g = self.monic();
        let n = match g.degree() {
            None | Some(0) => return Vec::new(),
            Some(1) => return vec![g],
            Some(n) => n,
        };
        // Row i of Q holds x^{q i} mod g; the fixed space of the q-power map
        // is the kernel of (Q - I)^t.
        let xq = UPoly::x(f).powmod(q, &g);
        let mut rows = Vec::with_capacity(n);
        let mut cur = UPoly::constant(f, Elem::ONE);
        for _ in 0..n {
            let mut r: Vec<Elem> = (0..n).map(|j| cur.coeff(j)).collect();
            r.resize(n, Elem::ZERO);
            rows.push(r);
            cur = cur.mulmod(&xq, &g);
        }
        let mut m = Matrix::from_rows(f, &rows);
        for i in 0..n {
            m.set(i, i, f.sub(m.get(i, i), Elem::ONE));
        }
        let basis = m.transpose().nullspace();
        let r = basis.len();
        let mut factors = vec![g.clone()];
        if r == 1 {
            return factors;
        }
        for v in basis {
            let v = UPoly::new(f, v);
            if v.degree().unwrap_or(0) == 0 {
                continue;
            }
            let mut next = Vec::new();
            for h in factors {
                if h.degree() == Some(1) {
                    next.push(h);
                    continue;
                }
                let mut rest = h.clone();
                for s in f.elements() {
                    if rest.degree() == Some(0) {
                        break;
                    }
                    let t = v.sub(&UPoly::constant(f, s)).gcd(&rest);
                    if t.degree().unwrap_or(0) > 0 && t.degree() != rest.degree() {
                        rest = rest.divrem(&t).0;
                        next.push(t);
                    } else if t.degree() == rest.degree() {
                        break;
                    }
                }
                if rest.degree().unwrap_or(0) > 0 {
                    next.push(rest.monic());
                }
            }
            factors = next;
            if factors.len() == r {
                break;
            }
        }
        factors.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs.cmp(&b.coeffs))
        });
        factors
    }

    /// Full factorization into monic irreducibles with multiplicity.
    pub fn factor(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        for (g, e) in self.squarefree_decomposition() {
            for h in g.berlekamp() {
                out.push((h, e));
            }
        }
        out.sort_by(|(a, ea), (b, eb)| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs.cmp(&b.coeffs))
                .then(ea.cmp(eb))
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use proptest::prelude::*;

    fn f2() -> Field {
        make_field(2, 1, None).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let f = f2();
        let a = UPoly::from_ints(&f, &[1, 0, 1]);
        let b = UPoly::from_ints(&f, &[1, 1]);
        assert_eq!(a.gcd(&b), b);
        let f4 = make_field(2, 2, None).unwrap();
        let x3p1 = UPoly::from_ints(&f4, &[1, 0, 0, 1]);
        let x2 = UPoly::from_ints(&f4, &[0, 0, 1]);
        assert_eq!(x3p1.gcd(&x2), UPoly::from_ints(&f4, &[1]));
        assert_eq!(x3p1.gcd(&UPoly::zero(&f4)), x3p1);
    }

    #[test]
    fn squarefree_with_pth_powers() {
        let f = f2();
        // (x+1)^2 * x^3 * (x^2+x+1)
        let x1 = UPoly::from_ints(&f, &[1, 1]);
        let x = UPoly::from_ints(&f, &[0, 1]);
        let c = UPoly::from_ints(&f, &[1, 1, 1]);
        let p = x1.pow(2).mul(&x.pow(3)).mul(&c);
        let sq = p.squarefree_decomposition();
        assert_eq!(sq, vec![(c.clone(), 1), (x1.clone(), 2), (x.clone(), 3)]);
        let fac = p.factor();
        assert_eq!(fac, vec![(x, 3), (x1, 2), (c, 1)]);
    }

    #[test]
    fn berlekamp_x15_minus_1() {
        let f = f2();
        let mut c = vec![0i64; 16];
        c[0] = 1;
        c[15] = 1;
        let g = UPoly::from_ints(&f, &c);
        let fac = g.berlekamp();
        let degs: Vec<usize> = fac.iter().map(|h| h.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 2, 4, 4, 4]);
        let prod = fac.iter().fold(UPoly::from_ints(&f, &[1]), |a, h| a.mul(h));
        assert_eq!(prod, g);
    }

    #[test]
    fn berlekamp_over_f4() {
        let f4 = make_field(2, 2, None).unwrap();
        // x^3 + 1 splits completely over F_4.
        let g = UPoly::from_ints(&f4, &[1, 0, 0, 1]);
        let fac = g.berlekamp();
        assert_eq!(fac.len(), 3);
        assert!(fac.iter().all(|h| h.degree() == Some(1)));
    }

    #[test]
    fn modext_inverse() {
        let f = f2();
        let pi = UPoly::from_ints(&f, &[1, 1, 0, 1]);
        let k = ModExt::new(&f, pi);
        let a = k.generator();
        let ai = k.inv(&a);
        assert_eq!(k.mul(&a, &ai), k.one());
    }

    fn oracle_irreducible(g: &UPoly<Field>) -> bool {
        // Trial division by every monic polynomial of degree 1..=deg/2.
        let f = g.ring().clone();
        let q = f.order() as usize;
        let n = g.degree().unwrap();
        for d in 1..=n / 2 {
            for idx in 0..q.pow(d as u32) {
                let mut c = Vec::new();
                let mut t = idx;
                for _ in 0..d {
                    c.push(Elem((t % q) as u32));
                    t /= q;
                }
                c.push(Elem::ONE);
                let h = UPoly::from_elems(&f, &c);
                if g.rem(&h).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    proptest! {
        #[test]
        fn factorization_reassembles(coeffs in proptest::collection::vec(0u32..3, 2..9)) {
            let f3 = make_field(3, 1, None).unwrap();
            let mut c: Vec<Elem> = coeffs.into_iter().map(Elem).collect();
            c.push(Elem::ONE);
            let g = UPoly::from_elems(&f3, &c);
            let fac = g.factor();
            let mut prod = UPoly::from_ints(&f3, &[1]);
            for (h, e) in &fac {
                prop_assert!(oracle_irreducible(h));
                prod = prod.mul(&h.pow(*e));
            }
            prop_assert_eq!(prod, g);
        }

        #[test]
        fn factorization_over_f4(coeffs in proptest::collection::vec(0u32..4, 2..7)) {
            let f4 = make_field(2, 2, None).unwrap();
            let mut c: Vec<Elem> = coeffs.into_iter().map(Elem).collect();
            c.push(Elem::ONE);
            let g = UPoly::from_elems(&f4, &c);
            let mut prod = UPoly::from_ints(&f4, &[1]);
            for (h, e) in g.factor() {
                prop_assert!(oracle_irreducible(&h));
                prod = prod.mul(&h.pow(e));
            }
            prop_assert_eq!(prod, g);
        }
    }
}

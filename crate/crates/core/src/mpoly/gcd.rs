//! Greatest common divisors of homogeneous forms by linear algebra.

use std::collections::HashMap;

use super::{monomials_of_degree, HomogPoly, Monomial, PolyError};
use crate::gf::{Elem, Matrix};

fn index_of(ms: &[Monomial]) -> HashMap<Monomial, usize> {
    ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Nonzero `(U, V)` with `A V = B U`, `deg V = deg B - e`, `deg U = deg A - e`,
/// if one exists.
fn cofactors(a: &HomogPoly, b: &HomogPoly, e: u64) -> Option<(HomogPoly, HomogPoly)> {
    let f = a.field();
    let n = a.nvars();
    let (da, db) = (a.degree(), b.degree());
    let vm = monomials_of_degree(n, (db - e) as u32);
    let um = monomials_of_degree(n, (da - e) as u32);
    let rows = monomials_of_degree(n, (da + db - e) as u32);
    let idx = index_of(&rows);
    let mut m = Matrix::zeros(f, rows.len(), vm.len() + um.len());
    for (j, v) in vm.iter().enumerate() {
        for (t, &c) in a.terms() {
            m.set(idx[&t.mul(v)], j, c);
        }
    }
    for (j, u) in um.iter().enumerate() {
        for (t, &c) in b.terms() {
            m.set(idx[&t.mul(u)], vm.len() + j, f.neg(c));
        }
    }
    let ker = m.nullspace();
    let k = ker.first()?;
    let build = |ms: &[Monomial], cs: &[Elem], deg: u64| {
        let terms: Vec<(Monomial, Elem)> = ms.iter().cloned().zip(cs.iter().copied()).collect();
        HomogPoly::from_terms(f, n, deg, terms).expect("homogeneous by construction")
    };
    let v = build(&vm, &k[..vm.len()], db - e);
    let u = build(&um, &k[vm.len()..], da - e);
    Some((u, v))
}

impl HomogPoly {
    /// Greatest common divisor, normalized to leading coefficient 1.
    /// The gcd over `F_q` agrees with the gcd over any extension.
    pub fn gcd(&self, o: &HomogPoly) -> Result<HomogPoly, PolyError> {
        self.check_compatible(o)?;
        let monic = |p: &HomogPoly| {
            let (_, &c) = p.leading_term().expect("nonzero");
            p.scale(p.field().inv(c).unwrap())
        };
        match (self.is_zero(), o.is_zero()) {
            (true, true) => return Err(PolyError::BothZero),
            (true, false) => return Ok(monic(o)),
            (false, true) => return Ok(monic(self)),
            _ => {}
        }
        let (a, b) = if self.degree() <= o.degree() {
            (self, o)
        } else {
            (o, self)
        };
        for e in (1..=a.degree()).rev() {
            if let Some((_, v)) = cofactors(a, b, e) {
                let g = v.divides(b)?.expect("cofactor divides");
                return Ok(monic(&g));
            }
        }
        Ok(HomogPoly::monomial(
            a.field(),
            Elem::ONE,
            &vec![0; a.nvars()],
        ))
    }

    /// Whether `F` has no repeated factor over the algebraic closure,
    /// decided as `gcd(F, dF/dx_0, ..., dF/dx_n) = 1`.
    pub fn is_reduced(&self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroForm);
        }
        let mut g = self.clone();
        for d in self.gradient() {
            if g.degree() == 0 {
                break;
            }
            if !d.is_zero() {
                g = g.gcd(&d)?;
            }
        }
        Ok(g.degree() == 0)
    }
}

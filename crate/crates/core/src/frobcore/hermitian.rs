//! Frobenius forms `F = x^{q'} M x^t` and Hermitian structure.

use serde_json::{json, Value};

use super::{defined_over, log_p, FrobError};
use crate::gf::{make_field, Elem, Field, Matrix};
use crate::mpoly::{format_elem_literal, HomogPoly, Monomial};

/// Coefficient matrix `M` of a form `sum_ij x_i^{q'} M_ij x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesquiMatrix {
    pub matrix: Matrix,
    pub qp: u64,
}

impl SesquiMatrix {
    pub fn new(matrix: Matrix, qp: u64) -> Result<Self, FrobError> {
        let p = matrix.field().characteristic();
        log_p(qp, p).ok_or(FrobError::NotAPowerOfP { q: qp, p })?;
        Ok(SesquiMatrix { matrix, qp })
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    /// `x^{q'} M x^t` as a polynomial.
    pub fn to_poly(&self) -> HomogPoly {
        let f = self.field();
        let n = self.matrix.nrows();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = self.matrix.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let mut e = vec![0u32; n];
                e[i] += self.qp as u32;
                e[j] += 1;
                terms.push((Monomial::new(&e), c));
            }
        }
        HomogPoly::from_terms(f, n, self.qp + 1, terms).expect("homogeneous by construction")
    }

    /// `M-bar = (M_ij^{q'})`, the conjugate when the field has order `q'^2`.
    pub fn bar(&self) -> Matrix {
        let f = self.field().clone();
        let qp = self.qp;
        self.matrix.map(|c| f.pow(c, qp))
    }

    fn require_square_field(&self) -> Result<(), FrobError> {
        let order = self.field().order() as u64;
        if order != self.qp * self.qp {
            return Err(FrobError::WrongFieldOrder {
                expected: self.qp * self.qp,
                found: order,
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let f = self.field();
        let rows: Vec<Vec<String>> = self
            .matrix
            .rows()
            .iter()
            .map(|r| r.iter().map(|&c| format_elem_literal(f, c)).collect())
            .collect();
        json!({ "q_prime": self.qp, "matrix": rows })
    }
}

/// Reads off `M` when every monomial of `F` has the shape `x_i^{q'} x_j`.
/// Returns `Ok(None)` when `F` has degree `q' + 1` but another monomial
/// occurs.
pub fn as_frobenius_form(poly: &HomogPoly, qp: u64) -> Result<Option<SesquiMatrix>, FrobError> {
    let f = poly.field();
    let p = f.characteristic();
    log_p(qp, p).ok_or(FrobError::NotAPowerOfP { q: qp, p })?;
    if poly.degree() != qp + 1 {
        return Err(FrobError::DegreeMismatch {
            expected: qp + 1,
            found: poly.degree(),
        });
    }
    let n = poly.nvars();
    let mut m = Matrix::zeros(f, n, n);
    for (mono, &c) in poly.terms() {
        let e = mono.exps();
        let big: Vec<usize> = (0..n).filter(|&i| e[i] as u64 >= qp).collect();
        let (i, j) = match big.as_slice() {
            [i] if e[*i] as u64 == qp + 1 => (*i, *i),
            [i] if e[*i] as u64 == qp => match (0..n).find(|&j| e[j] == 1) {
                Some(j) => (*i, j),
                None => return Ok(None),
            },
            _ => return Ok(None),
        };
        m.set(i, j, c);
    }
    Ok(Some(SesquiMatrix { matrix: m, qp }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HermitianTests {
    pub is_hermitian: bool,
    pub is_skew_hermitian: bool,
}

/// Compares `M-bar^t` with `M` and `-M`. The field must have order `q'^2`.
pub fn hermitian_tests(m: &SesquiMatrix) -> Result<HermitianTests, FrobError> {
    m.require_square_field()?;
    let bt = m.bar().transpose();
    Ok(HermitianTests {
        is_hermitian: bt == m.matrix,
        is_skew_hermitian: bt == m.matrix.neg(),
    })
}

/// `M = M1 + M2` with `M1 = (M + M-bar^t)/2` Hermitian and
/// `M2 = (M - M-bar^t)/2` skew-Hermitian.
pub fn hermitian_decompose(m: &SesquiMatrix) -> Result<(SesquiMatrix, SesquiMatrix), FrobError> {
    m.require_square_field()?;
    let f = m.field();
    if f.characteristic() == 2 {
        return Err(FrobError::CharacteristicTwo);
    }
    let half = f.inv(f.from_int(2))?;
    let bt = m.bar().transpose();
    let m1 = m.matrix.add(&bt).scale(half);
    let m2 = m.matrix.sub(&bt).scale(half);
    Ok((
        SesquiMatrix { matrix: m1, qp: m.qp },
        SesquiMatrix { matrix: m2, qp: m.qp },
    ))
}

/// `h(u, w) = u-bar^t M w`.
fn form(m: &SesquiMatrix, u: &[Elem], w: &[Elem]) -> Elem {
    let f = m.field();
    let mw = m.matrix.mul_vec(w);
    u.iter().zip(&mw).fold(Elem::ZERO, |acc, (&a, &b)| {
        f.add(acc, f.mul(f.pow(a, m.qp), b))
    })
}

/// For Hermitian `M != 0`, an invertible `P` and the rank `r` with
/// `P-bar^t M P = diag(1, ..., 1, 0, ..., 0)`.
pub fn hermitian_normalize(m: &SesquiMatrix) -> Result<(Matrix, usize), FrobError> {
    let t = hermitian_tests(m)?;
    if !t.is_hermitian {
        return Err(FrobError::NotHermitian);
    }
    if m.matrix.is_zero() {
        return Err(FrobError::ZeroMatrix);
    }
    let f = m.field().clone();
    let n = m.matrix.nrows();
    let mut basis: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            let mut v = vec![Elem::ZERO; n];
            v[i] = Elem::ONE;
            v
        })
        .collect();
    let mut chosen: Vec<Vec<Elem>> = Vec::new();
    let combine = |u: &[Elem], w: &[Elem], l: Elem| -> Vec<Elem> {
        u.iter().zip(w).map(|(&a, &b)| f.add(a, f.mul(l, b))).collect()
    };
    loop {
        let mut found: Option<(usize, Vec<Elem>)> = None;
        for (i, w) in basis.iter().enumerate() {
            if !form(m, w, w).is_zero() {
                found = Some((i, w.clone()));
                break;
            }
        }
        if found.is_none() {
            'pairs: for i in 0..basis.len() {
                for j in 0..basis.len() {
                    if i == j {
                        continue;
                    }
                    for l in f.nonzero_elements() {
                        let v = combine(&basis[i], &basis[j], l);
                        if !form(m, &v, &v).is_zero() {
                            found = Some((i, v));
                            break 'pairs;
                        }
                    }
                }
            }
        }
        let Some((drop, v)) = found else { break };
        let s = form(m, &v, &v);
        let target = f.inv(s)?;
        let mu = f
            .nonzero_elements()
            .find(|&mu| f.mul(f.pow(mu, m.qp), mu) == target)
            .expect("the norm map is surjective");
        let v: Vec<Elem> = v.iter().map(|&c| f.mul(mu, c)).collect();
        basis.remove(drop);
        for w in basis.iter_mut() {
            let h = form(m, &v, w);
            *w = combine(w, &v, f.neg(h));
        }
        chosen.push(v);
    }
    let r = chosen.len();
    let cols: Vec<Vec<Elem>> = chosen.into_iter().chain(basis).collect();
    let mut p = Matrix::zeros(&f, n, n);
    for (j, c) in cols.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            p.set(i, j, v);
        }
    }
    Ok((p, r))
}

/// Whether `{F = 0}` is a Hermitian hypersurface over `F_q`.
#[derive(Clone, Debug)]
pub struct HermitianVerdict {
    pub hermitian: bool,
    /// Scalar `alpha` with `alpha * M` Hermitian (`1` if `M` already is).
    pub scale: Option<Elem>,
    pub form: Option<SesquiMatrix>,
    /// `(P, r)` normalizing `alpha * M`.
    pub normalization: Option<(Matrix, usize)>,
}

impl HermitianVerdict {
    pub fn to_json(&self) -> Value {
        let field = self.form.as_ref().map(|m| m.field().clone());
        json!({
            "hermitian": self.hermitian,
            "scale": match (&field, self.scale) {
                (Some(f), Some(s)) => Some(format_elem_literal(f, s)),
                _ => None,
            },
            "form": self.form.as_ref().map(|m| m.to_json()),
            "rank": self.normalization.as_ref().map(|(_, r)| *r),
        })
    }
}

/// Recognizes `F` as a scalar multiple of a Hermitian form
/// `sum x_i^{sqrt q} M_ij x_j` with `M-bar^t = M` over `F_q`.
pub fn is_hermitian_hypersurface(poly: &HomogPoly, q: u64) -> Result<HermitianVerdict, FrobError> {
    if poly.is_zero() {
        return Err(FrobError::ZeroPolynomial);
    }
    let p = poly.field().characteristic();
    let e = log_p(q, p).ok_or(FrobError::NotAPowerOfP { q, p })?;
    if e % 2 != 0 {
        return Err(FrobError::NotASquare(q));
    }
    let qp = (p as u64).pow(e / 2);
    if poly.degree() != qp + 1 {
        return Err(FrobError::DegreeMismatch {
            expected: qp + 1,
            found: poly.degree(),
        });
    }
    let base = defined_over(poly, q)?;
    let fq = make_field(p as u64, e, None)?;
    let fpoly = base.embed(&fq)?;
    let no = HermitianVerdict {
        hermitian: false,
        scale: None,
        form: None,
        normalization: None,
    };
    let Some(m) = as_frobenius_form(&fpoly, qp)? else {
        return Ok(no);
    };
    let t = hermitian_tests(&m)?;
    let alpha = if t.is_hermitian {
        Elem::ONE
    } else if t.is_skew_hermitian {
        fq.nonzero_elements()
            .find(|&a| fq.pow(a, qp) == fq.neg(a))
            .expect("the kernel of the trace is nonzero")
    } else {
        return Ok(HermitianVerdict { form: Some(m), ..no });
    };
    let scaled = SesquiMatrix {
        matrix: m.matrix.scale(alpha),
        qp,
    };
    let normalization = Some(hermitian_normalize(&scaled)?);
    Ok(HermitianVerdict {
        hermitian: true,
        scale: Some(alpha),
        form: Some(m),
        normalization,
    })
}

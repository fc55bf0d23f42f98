use super::*;
use crate::gf::{make_field, Elem, Field, Matrix};
use crate::mpoly::{parse_poly, HomogPoly};
use proptest::prelude::*;

fn f(p: u64, k: u32) -> Field {
    make_field(p, k, None).unwrap()
}

fn poly(field: &Field, nvars: usize, s: &str) -> HomogPoly {
    parse_poly(s, field, nvars).unwrap()
}

const DGZ: &str = "x0^4 + x0^2*x1^2 + x1^4 + x0^2*x1*x2 + x0*x1^2*x2 + x0^2*x2^2 + x0*x1*x2^2 + x1^2*x2^2 + x2^4";

/// `sum_i x_i^q dF/dx_i` assembled from monomials directly, without
/// derivatives or twists.
fn f10_oracle(poly: &HomogPoly, q: u64) -> HomogPoly {
    let field = poly.field();
    let n = poly.nvars();
    let mut acc = HomogPoly::zero(field, n, poly.degree() - 1 + q);
    for (m, &c) in poly.terms() {
        for i in 0..n {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let coef = field.mul(c, field.from_int(e as i64));
            if coef.is_zero() {
                continue;
            }
            let mut ex = m.exps().to_vec();
            ex[i] = ex[i] - 1 + q as u32;
            acc = acc
                .add(&HomogPoly::monomial(field, coef, &ex))
                .unwrap();
        }
    }
    acc
}

#[test]
fn hermitian_cubic_f10_is_square() {
    let f4 = f(2, 2);
    let h = poly(&f4, 3, "x0^3 + x1^3 + x2^3");
    let f10 = compute_fab(&h, 1, 0, 4).unwrap();
    assert_eq!(f10, h.pow(2).unwrap());
    let c = is_frobenius_nonclassical(&h, 4).unwrap();
    assert!(c.nonclassical);
    assert_eq!(c.kind, F10Kind::ScalarPower { c: Elem::ONE, e: 2 });
}

#[test]
fn space_filling_cubic_has_zero_f10() {
    let f2 = f(2, 1);
    let s = poly(&f2, 4, "x0^2*x1 + x0*x1^2 + x2^2*x3 + x2*x3^2");
    assert!(compute_fab(&s, 1, 0, 2).unwrap().is_zero());
    let c = is_frobenius_nonclassical(&s, 2).unwrap();
    assert_eq!(c.kind, F10Kind::Zero);
    assert!(c.nonclassical);
}

#[test]
fn fermat_cubic_over_f2_is_classical() {
    let f2 = f(2, 1);
    let g = poly(&f2, 3, "x0^3 + x1^3 + x2^3");
    let c = is_frobenius_nonclassical(&g, 2).unwrap();
    assert_eq!(c.f10, poly(&f2, 3, "x0 + x1 + x2").pow(4).unwrap());
    assert!(!c.nonclassical);
    assert_eq!(c.kind, F10Kind::NotDivisible);
    let v = pointwise_fn_check(&g, 2, 2).unwrap();
    assert!(!v.passed);
    let pt = v.counterexample.unwrap();
    assert!(!pt.is_rational_over(2));
}

#[test]
fn dgz_curve_has_zero_f10() {
    let f2 = f(2, 1);
    let g = poly(&f2, 3, DGZ);
    let c = is_frobenius_nonclassical(&g, 2).unwrap();
    assert_eq!(c.kind, F10Kind::Zero);
}

#[test]
fn skew_form_over_quadratic_extension() {
    for q in [2u64, 3] {
        let fq = f(q, 1);
        // x0^q x1 - x1^q x0 + x2^q x3 - x3^q x2
        let s = format!("x0^{q}*x1 - x0*x1^{q} + x2^{q}*x3 - x2*x3^{q}");
        let sk = poly(&fq, 4, &s);
        let f10 = compute_fab(&sk, 1, 0, q * q).unwrap();
        assert_eq!(f10, sk.pow(q).unwrap().neg());
        let prof = multi_fn_profile(&sk, q, &[1, 2]).unwrap();
        assert!(prof.iter().all(|(_, c)| c.nonclassical));
        let minus_one = fq.neg(Elem::ONE);
        assert_eq!(prof[1].1.kind, F10Kind::ScalarPower { c: minus_one, e: q });
        let v = is_hermitian_hypersurface(&sk, q * q).unwrap();
        assert!(v.hermitian);
        let fq2 = f(q, 2);
        let a = v.scale.unwrap();
        assert_eq!(fq2.pow(a, q), fq2.neg(a));
    }
}

#[test]
fn generalized_fermat_over_f8() {
    let f8 = f(2, 3);
    let g = poly(&f8, 3, "x0^7 + x1^7 + x2^7");
    let c = is_frobenius_nonclassical(&g, 8).unwrap();
    assert_eq!(c.f10, g.pow(2).unwrap());
    assert!(c.nonclassical);
}

#[test]
fn classification_rejects_fields_not_in_fq() {
    let f4 = f(2, 2);
    let g = poly(&f4, 3, "a*x0^3 + x1^3 + x2^3");
    assert_eq!(
        is_frobenius_nonclassical(&g, 2).unwrap_err(),
        FrobError::NotDefinedOver(2)
    );
    let zero = HomogPoly::zero(&f4, 3, 3);
    assert_eq!(
        is_frobenius_nonclassical(&zero, 4).unwrap_err(),
        FrobError::ZeroPolynomial
    );
    assert!(matches!(
        is_frobenius_nonclassical(&g, 6),
        Err(FrobError::NotAPowerOfP { .. })
    ));
}

#[test]
fn large_twist_overflows() {
    let f2 = f(2, 1);
    let g = poly(&f2, 3, "x0^3 + x1^3 + x2^3");
    assert_eq!(
        compute_fab(&g, 1, 40, 2).unwrap_err(),
        FrobError::DegreeOverflow
    );
}

#[test]
fn pointwise_hermitian_passes() {
    let f4 = f(2, 2);
    let h = poly(&f4, 3, "x0^3 + x1^3 + x2^3");
    let v1 = pointwise_fn_check(&h, 4, 1).unwrap();
    assert!(v1.passed);
    assert_eq!(v1.smooth_points_checked, 9);
    for m in 2..=3 {
        assert!(pointwise_fn_check(&h, 4, m).unwrap().passed);
    }
}

#[test]
fn classification_json_shape() {
    let f4 = f(2, 2);
    let h = poly(&f4, 3, "x0^3 + x1^3 + x2^3");
    let j = is_frobenius_nonclassical(&h, 4).unwrap().to_json();
    assert_eq!(j["kind"], "scalar_power");
    assert_eq!(j["c"], "1");
    assert_eq!(j["e"], 2);
    assert_eq!(j["quotient"], "x0^3 + x1^3 + x2^3");
}

#[test]
fn frobenius_form_extraction() {
    let f4 = f(2, 2);
    let h = poly(&f4, 3, "x0^3 + x1^3 + x2^3");
    let m = as_frobenius_form(&h, 2).unwrap().unwrap();
    assert_eq!(m.matrix, Matrix::identity(&f4, 3));
    assert_eq!(m.to_poly(), h);

    let f2 = f(2, 1);
    let s = poly(&f2, 4, "x0^2*x1 + x0*x1^2 + x2^2*x3 + x2*x3^2");
    let m = as_frobenius_form(&s, 2).unwrap().unwrap();
    let want = Matrix::from_ints(
        &f2,
        &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]],
    );
    assert_eq!(m.matrix, want);

    let d = poly(&f2, 3, DGZ);
    assert!(matches!(
        as_frobenius_form(&d, 2),
        Err(FrobError::DegreeMismatch { .. })
    ));
    let g = poly(&f4, 3, "x0^3 + x0*x1*x2");
    assert!(as_frobenius_form(&g, 2).unwrap().is_none());
    assert!(!is_hermitian_hypersurface(&g, 4).unwrap().hermitian);
}

#[test]
fn hermitian_test_examples() {
    let f4 = f(2, 2);
    let id = SesquiMatrix::new(Matrix::identity(&f4, 3), 2).unwrap();
    assert!(hermitian_tests(&id).unwrap().is_hermitian);

    let f9 = f(3, 2);
    let sk = SesquiMatrix::new(Matrix::from_ints(&f9, &[&[0, 1], &[-1, 0]]), 3).unwrap();
    let t = hermitian_tests(&sk).unwrap();
    assert!(t.is_skew_hermitian && !t.is_hermitian);

    let a = f4.generator();
    let asym = SesquiMatrix::new(
        Matrix::from_rows(&f4, &[vec![Elem::ZERO, a], vec![Elem::ZERO, Elem::ZERO]]),
        2,
    )
    .unwrap();
    let t = hermitian_tests(&asym).unwrap();
    assert!(!t.is_hermitian && !t.is_skew_hermitian);

    let wrong = SesquiMatrix::new(Matrix::identity(&f(2, 1), 2), 2).unwrap();
    assert!(matches!(
        hermitian_tests(&wrong),
        Err(FrobError::WrongFieldOrder { .. })
    ));
}

#[test]
fn decompose_trivial_cases() {
    let f9 = f(3, 2);
    let h = SesquiMatrix::new(Matrix::identity(&f9, 2), 3).unwrap();
    let (m1, m2) = hermitian_decompose(&h).unwrap();
    assert_eq!(m1, h);
    assert!(m2.matrix.is_zero());
    let sk = SesquiMatrix::new(Matrix::from_ints(&f9, &[&[0, 1], &[-1, 0]]), 3).unwrap();
    let (m1, m2) = hermitian_decompose(&sk).unwrap();
    assert!(m1.matrix.is_zero());
    assert_eq!(m2, sk);
    let f4 = f(2, 2);
    let id = SesquiMatrix::new(Matrix::identity(&f4, 2), 2).unwrap();
    assert_eq!(
        hermitian_decompose(&id).unwrap_err(),
        FrobError::CharacteristicTwo
    );
}

/// Every 2x2 matrix over F_9: the parts are Hermitian and skew-Hermitian,
/// they recombine to `M`, and `G = F1^3 - F2^3` with `G = F_{1,0}` over
/// `F_9`.
#[test]
fn decomposition_identity_exhaustive_f9() {
    let f9 = f(3, 2);
    let els: Vec<Elem> = f9.elements().collect();
    for &a in &els {
        for &b in &els {
            for &c in &els {
                for &d in &els {
                    let m = Matrix::from_rows(&f9, &[vec![a, b], vec![c, d]]);
                    let sm = SesquiMatrix::new(m.clone(), 3).unwrap();
                    let (m1, m2) = hermitian_decompose(&sm).unwrap();
                    assert!(hermitian_tests(&m1).unwrap().is_hermitian);
                    assert!(hermitian_tests(&m2).unwrap().is_skew_hermitian);
                    assert_eq!(m1.matrix.add(&m2.matrix), m);
                    let fpoly = sm.to_poly();
                    if fpoly.is_zero() {
                        continue;
                    }
                    let g = compute_fab(&fpoly, 1, 0, 9).unwrap();
                    let rhs = m1
                        .to_poly()
                        .pow(3)
                        .unwrap()
                        .sub(&m2.to_poly().pow(3).unwrap())
                        .unwrap();
                    assert_eq!(g, rhs);
                }
            }
        }
    }
}

fn check_normal_form(m: &SesquiMatrix, p: &Matrix, r: usize) {
    let f = m.field();
    let pbar_t = p.map(|c| f.pow(c, m.qp)).transpose();
    let prod = pbar_t.mul(&m.matrix).mul(p);
    let n = m.matrix.nrows();
    let mut want = Matrix::zeros(f, n, n);
    for i in 0..r {
        want.set(i, i, Elem::ONE);
    }
    assert_eq!(prod, want);
    assert!(p.inverse().is_some());
}

#[test]
fn normalize_examples() {
    let f4 = f(2, 2);
    let id = SesquiMatrix::new(Matrix::identity(&f4, 3), 2).unwrap();
    let (p, r) = hermitian_normalize(&id).unwrap();
    assert_eq!(p, Matrix::identity(&f4, 3));
    assert_eq!(r, 3);

    // diag(a * a-bar, 1, 0) = diag(1, 1, 0) up to the norm; a-bar a = 1 in F_4.
    let a = f4.generator();
    let norm = f4.mul(a, f4.pow(a, 2));
    let d = SesquiMatrix::new(
        Matrix::from_rows(
            &f4,
            &[
                vec![norm, Elem::ZERO, Elem::ZERO],
                vec![Elem::ZERO, Elem::ZERO, Elem::ZERO],
                vec![Elem::ZERO, Elem::ZERO, Elem::ONE],
            ],
        ),
        2,
    )
    .unwrap();
    let (p, r) = hermitian_normalize(&d).unwrap();
    assert_eq!(r, 2);
    check_normal_form(&d, &p, r);

    // rank one: v-bar v^t with v = (1, a, 0)
    let v = [Elem::ONE, a, Elem::ZERO];
    let rows: Vec<Vec<Elem>> = (0..3)
        .map(|i| (0..3).map(|j| f4.mul(f4.pow(v[i], 2), v[j])).collect())
        .collect();
    let r1 = SesquiMatrix::new(Matrix::from_rows(&f4, &rows), 2).unwrap();
    let (p, r) = hermitian_normalize(&r1).unwrap();
    assert_eq!(r, 1);
    check_normal_form(&r1, &p, r);

    // hyperbolic plane: zero diagonal
    let hyp = SesquiMatrix::new(Matrix::from_ints(&f4, &[&[0, 1], &[1, 0]]), 2).unwrap();
    let (p, r) = hermitian_normalize(&hyp).unwrap();
    assert_eq!(r, 2);
    check_normal_form(&hyp, &p, r);

    assert_eq!(
        hermitian_normalize(&SesquiMatrix::new(Matrix::zeros(&f4, 2, 2), 2).unwrap())
            .unwrap_err(),
        FrobError::ZeroMatrix
    );
    let asym = SesquiMatrix::new(Matrix::from_ints(&f4, &[&[0, 1], &[0, 0]]), 2).unwrap();
    assert_eq!(
        hermitian_normalize(&asym).unwrap_err(),
        FrobError::NotHermitian
    );
}

#[test]
fn hermitian_cubic_is_recognized() {
    let f4 = f(2, 2);
    let h = poly(&f4, 3, "x0^3 + x1^3 + x2^3");
    let v = is_hermitian_hypersurface(&h, 4).unwrap();
    assert!(v.hermitian);
    assert_eq!(v.scale, Some(Elem::ONE));
    let (p, r) = v.normalization.unwrap();
    assert_eq!(p, Matrix::identity(&f4, 3));
    assert_eq!(r, 3);
    assert!(matches!(
        is_hermitian_hypersurface(&h, 8),
        Err(FrobError::NotASquare(8))
    ));
    let f2 = f(2, 1);
    let d = poly(&f2, 3, DGZ);
    assert!(matches!(
        is_hermitian_hypersurface(&d, 4),
        Err(FrobError::DegreeMismatch { .. })
    ));
}

fn arb_poly(field: Field, nvars: usize, deg: u64) -> impl Strategy<Value = HomogPoly> {
    let monos = crate::mpoly::monomials_of_degree(nvars, deg as u32);
    let q = field.order();
    proptest::collection::vec(0..q, monos.len()).prop_map(move |cs| {
        let terms: Vec<_> = monos
            .iter()
            .zip(cs)
            .map(|(m, c)| (m.clone(), Elem(c)))
            .collect();
        HomogPoly::from_terms(&field, nvars, deg, terms).unwrap()
    })
}

fn arb_field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(f(2, 1)), Just(f(3, 1)), Just(f(2, 2)), Just(f(5, 1))]
}

fn arb_hermitian(field: Field, n: usize) -> impl Strategy<Value = SesquiMatrix> {
    let q = field.order();
    let qp = field.sqrt_order().unwrap() as u64;
    proptest::collection::vec(0..q, n * n).prop_map(move |cs| {
        let m = Matrix::from_rows(
            &field,
            &cs.chunks(n).map(|r| r.iter().map(|&c| Elem(c)).collect()).collect::<Vec<_>>(),
        );
        let bt = m.map(|c| field.pow(c, qp)).transpose();
        // M + M-bar^t is Hermitian in every characteristic.
        SesquiMatrix::new(m.add(&bt), qp).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn f10_matches_oracle(
        (field, nv, d) in (arb_field(), 2usize..4, 1u64..5),
        seed in any::<u64>(),
    ) {
        let monos = crate::mpoly::monomials_of_degree(nv, d as u32);
        let mut s = seed;
        let terms: Vec<_> = monos.iter().map(|m| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (m.clone(), Elem(((s >> 33) % field.order() as u64) as u32))
        }).collect();
        let g = HomogPoly::from_terms(&field, nv, d, terms).unwrap();
        let q = field.order() as u64;
        prop_assert_eq!(compute_fab(&g, 1, 0, q).unwrap(), f10_oracle(&g, q));
    }

    #[test]
    fn classification_is_scalar_invariant(
        g in arb_poly(f(2, 2), 3, 3),
        c in 1u32..4,
    ) {
        prop_assume!(!g.is_zero());
        let a = is_frobenius_nonclassical(&g, 4).unwrap();
        let b = is_frobenius_nonclassical(&g.scale(Elem(c)), 4).unwrap();
        prop_assert_eq!(a.nonclassical, b.nonclassical);
        prop_assert_eq!(a.kind.name(), b.kind.name());
    }

    #[test]
    fn rational_hyperplanes_are_nonclassical(
        (field, cs) in arb_field().prop_flat_map(|f| {
            let q = f.order();
            (Just(f), proptest::collection::vec(0..q, 3))
        }),
    ) {
        prop_assume!(cs.iter().any(|&c| c != 0));
        let coeffs: Vec<Elem> = cs.iter().map(|&c| Elem(c)).collect();
        let l = HomogPoly::linear(&field, &coeffs);
        let c = is_frobenius_nonclassical(&l, field.order() as u64).unwrap();
        prop_assert!(c.nonclassical);
    }

    #[test]
    fn nonclassical_implies_pointwise_tangency(g in arb_poly(f(2, 1), 3, 3)) {
        prop_assume!(!g.is_zero());
        let c = is_frobenius_nonclassical(&g, 2).unwrap();
        for m in 1..=2 {
            let v = pointwise_fn_check(&g, 2, m).unwrap();
            if c.nonclassical {
                prop_assert!(v.passed);
            }
        }
    }

    #[test]
    fn normalization_is_standard_and_rank_invariant(
        m in arb_hermitian(f(2, 2), 3),
        pcs in proptest::collection::vec(0u32..4, 9),
    ) {
        prop_assume!(!m.matrix.is_zero());
        let (p, r) = hermitian_normalize(&m).unwrap();
        check_normal_form(&m, &p, r);
        let field = m.field().clone();
        let t = Matrix::from_rows(
            &field,
            &pcs.chunks(3).map(|r| r.iter().map(|&c| Elem(c)).collect()).collect::<Vec<_>>(),
        );
        prop_assume!(t.inverse().is_some());
        let tbt = t.map(|c| field.pow(c, 2)).transpose();
        let conj = SesquiMatrix::new(tbt.mul(&m.matrix).mul(&t), 2).unwrap();
        let (_, r2) = hermitian_normalize(&conj).unwrap();
        prop_assert_eq!(r, r2);
    }

    #[test]
    fn frobenius_form_round_trips(m in arb_hermitian(f(3, 2), 3)) {
        let g = m.to_poly();
        prop_assume!(!g.is_zero());
        let back = as_frobenius_form(&g, 3).unwrap().unwrap();
        prop_assert_eq!(back, m);
    }
}

use super::*;
use crate::gf::{make_field, Elem, Field, Matrix};
use crate::mpoly::parse_poly;
use crate::projgeom::{enumerate_points, value_at};
use proptest::prelude::*;

fn f(p: u64, k: u32) -> Field {
    make_field(p, k, None).unwrap()
}

fn naive_count(poly: &HomogPoly) -> u64 {
    enumerate_points(poly.nvars() - 1, poly.field())
        .iter()
        .filter(|pt| value_at(poly, pt).unwrap().is_zero())
        .count() as u64
}

fn assert_all_pass(inst: &FamilyInstance) {
    for c in inst.verify().unwrap() {
        assert!(c.passed, "{} failed for {} ({})", c.property, inst.poly, c.detail);
    }
}

/// Points on a nondegenerate Hermitian variety in `P^n(F_{s^2})`.
fn hermitian_count(s: i64, n: u32) -> u64 {
    let sign = if n % 2 == 0 { 1 } else { -1 };
    ((s.pow(n + 1) + sign) * (s.pow(n) - sign) / (s * s - 1)) as u64
}

#[test]
fn space_filling_surfaces() {
    for (p, k) in [(2, 1), (3, 1), (2, 2)] {
        let field = f(p, k);
        let inst = gen_space_filling(&field, 3).unwrap();
        let q = field.order() as u64;
        assert_eq!(inst.poly.degree(), q + 1);
        assert_eq!(naive_count(&inst.poly), point_count(3, q));
        assert_all_pass(&inst);
    }
}

#[test]
fn skew_form_rejections() {
    let f3 = f(3, 1);
    let sym = Matrix::from_ints(&f3, &[&[0, 1], &[1, 0]]);
    assert_eq!(gen_skew_form(&sym).unwrap_err(), FamilyError::NotSkew);
    let odd = Matrix::zeros(&f3, 3, 3);
    assert_eq!(gen_skew_form(&odd).unwrap_err(), FamilyError::OddSize(3));
    let deg = Matrix::from_ints(
        &f3,
        &[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]],
    );
    assert_eq!(gen_skew_form(&deg).unwrap_err(), FamilyError::Degenerate);
}

#[test]
fn skew_form_over_square_of_q() {
    let inst = gen_space_filling(&f(2, 1), 1).unwrap();
    assert!(inst.has(Property::FnOver(4)));
    let c = is_frobenius_nonclassical(&inst.poly, 4).unwrap();
    assert_eq!(c.kind, F10Kind::ScalarPower { c: Elem::ONE, e: 2 });
}

#[test]
fn hermitian_varieties() {
    let f4 = f(2, 2);
    for n in 1..=3 {
        let inst = gen_hermitian(&f4, n, n).unwrap();
        assert_eq!(naive_count(&inst.poly), hermitian_count(2, n as u32));
        assert_all_pass(&inst);
    }
    let cone = gen_hermitian(&f4, 2, 1).unwrap();
    assert!(cone.has(Property::Singular));
    assert_all_pass(&cone);
    let f9 = f(3, 2);
    let curve = gen_hermitian(&f9, 2, 2).unwrap();
    assert_eq!(naive_count(&curve.poly), 28);
    assert_all_pass(&curve);
    assert_eq!(gen_hermitian(&f(2, 3), 2, 2).unwrap_err(), FamilyError::NotASquare(8));
}

#[test]
fn hermitian_from_matrix() {
    let f4 = f(2, 2);
    let a = f4.generator();
    let a2 = f4.mul(a, a);
    let h = Matrix::from_rows(
        &f4,
        &[
            vec![Elem::ONE, a, Elem::ZERO],
            vec![a2, Elem::ZERO, Elem::ZERO],
            vec![Elem::ZERO, Elem::ZERO, Elem::ONE],
        ],
    );
    let inst = gen_hermitian_from_matrix(&h).unwrap();
    assert!(inst.has(Property::Smooth));
    assert_all_pass(&inst);
    assert_eq!(naive_count(&inst.poly), 9);
    let bad = Matrix::from_rows(
        &f4,
        &[vec![Elem::ONE, a], vec![a, Elem::ONE]],
    );
    assert_eq!(gen_hermitian_from_matrix(&bad).unwrap_err(), FamilyError::NotHermitianMatrix);
    let zero = Matrix::zeros(&f4, 2, 2);
    assert_eq!(gen_hermitian_from_matrix(&zero).unwrap_err(), FamilyError::NotHermitianMatrix);
}

#[test]
fn char2_even_quintic_matches_published_polynomial() {
    let inst = char2_even_f4().unwrap();
    let f4 = inst.poly.field().clone();
    let published = parse_poly(
        "(a+1)*x0^5 + x0^3*x1^2 + x0^3*x1*x2 + x0^3*x2^2 + x0*x1^4 + x0*x1^2*x2^2 + x0*x2^4 \
         + x1^4*x2 + x1*x2^4",
        &f4,
        3,
    )
    .unwrap();
    assert_eq!(inst.poly, published);
    assert!(inst.has(Property::HessianDetZero));
    assert_all_pass(&inst);
}

#[test]
fn char2_even_identity_is_checked() {
    let f4 = f(2, 2);
    let b = Matrix::from_ints(&f4, &[&[0, 1], &[1, 0]]);
    let g = parse_poly("x1^4 + x2^4", &f4, 3).unwrap();
    let inst = gen_char2_even_n(&g, &b).unwrap();
    let holds = inst.params["x0_identity"].as_bool().unwrap();
    let oracle = {
        let f10 = compute_fab(&inst.poly, 1, 0, 4).unwrap();
        let x0 = HomogPoly::monomial(&f4, Elem::ONE, &[3, 0, 0]);
        x0.mul(&inst.poly).unwrap() == f10
    };
    assert_eq!(holds, oracle);
    assert_eq!(inst.has(Property::FnOver(4)), oracle);
    assert_all_pass(&inst);
    let bad_g = parse_poly("x0^3*x1 + x1^4", &f4, 3).unwrap();
    assert!(matches!(gen_char2_even_n(&bad_g, &b), Err(FamilyError::BadG(_))));
    let f3 = f(3, 1);
    let g3 = parse_poly("x1^3", &f3, 3).unwrap();
    let b3 = Matrix::from_ints(&f3, &[&[0, 1], &[-1, 0]]);
    assert_eq!(gen_char2_even_n(&g3, &b3).unwrap_err(), FamilyError::WrongCharacteristic(3));
    let g4 = parse_poly("x1^4", &f4, 4).unwrap();
    let b4 = Matrix::zeros(&f4, 3, 3);
    assert_eq!(gen_char2_even_n(&g4, &b4).unwrap_err(), FamilyError::OddN(3));
}

#[test]
fn q_plus_2_builtins_match_published_polynomials() {
    let dgz = q_plus_2_builtin("dgz").unwrap();
    let f2 = dgz.poly.field().clone();
    let dgz_published = parse_poly(
        "x0^4 + x0^2*x1^2 + x1^4 + x0^2*x1*x2 + x0*x1^2*x2 + x0^2*x2^2 + x0*x1*x2^2 + x1^2*x2^2 + x2^4",
        &f2,
        3,
    )
    .unwrap();
    assert_eq!(dgz.poly, dgz_published);

    let c4 = q_plus_2_builtin("f4").unwrap();
    let f4 = c4.poly.field().clone();
    let published4 = parse_poly(
        "x0^4*x1*x2 + x0*x1^4*x2 + x0*x1*x2^4 + x0^4*x1^2 + x0^2*x1^4 + x1^4*x2^2 + x1^2*x2^4 \
         + (a+1)*x0^6 + x1^6 + a*x2^6",
        &f4,
        3,
    )
    .unwrap();
    assert_eq!(c4.poly, published4);

    let c8 = q_plus_2_builtin("f8").unwrap();
    let f8 = c8.poly.field().clone();
    let published8 = parse_poly(
        "x0^8*x1*x2 + x0*x1^8*x2 + x0*x1*x2^8 + a^2*x0^10 + x0^6*x1^4 + x0^4*x1^6 + (a+1)*x1^10 \
         + (a^2+1)*x0^8*x2^2 + x0^4*x1^4*x2^2 + a*x1^8*x2^2 + x0^6*x2^4 + x0^2*x1^4*x2^4 \
         + x1^6*x2^4 + x0^4*x2^6 + x1^4*x2^6 + (a^2+1)*x0^2*x2^8 + a*x1^2*x2^8 + a*x2^10",
        &f8,
        3,
    )
    .unwrap();
    assert_eq!(c8.poly, published8);

    for inst in [&dgz, &c4, &c8] {
        assert_eq!(naive_count(&inst.poly), 0);
        assert_all_pass(inst);
    }
}

#[test]
fn q_plus_2_rejections() {
    let f4 = f(2, 2);
    let g = parse_poly("x0^2 + x1^2", &f4, 3).unwrap();
    assert!(matches!(gen_q_plus_2(&g), Err(FamilyError::BadG(_))));
    let f3 = f(3, 1);
    let g3 = parse_poly("x0^2", &f3, 3).unwrap();
    assert_eq!(gen_q_plus_2(&g3).unwrap_err(), FamilyError::WrongCharacteristic(3));
    assert!(q_plus_2_builtin("f16").is_err());
}

#[test]
fn norm_forms_are_pointless() {
    for (p, k, n) in [(2, 1, 1), (2, 1, 2), (3, 1, 2), (2, 2, 1), (2, 1, 3), (5, 1, 1)] {
        let base = f(p, k);
        let inst = norm_hypersurface_default(&base, n).unwrap();
        assert_eq!(inst.poly.degree(), n as u64 + 1);
        assert_eq!(inst.poly.field(), &base);
        assert_eq!(naive_count(&inst.poly), 0, "q={} n={n}", base.order());
        assert_all_pass(&inst);
    }
}

#[test]
fn norm_form_rejects_dependent_elements() {
    let base = f(2, 1);
    let ext = base.extension(3).unwrap();
    let a = ext.generator();
    let basis = [Elem::ONE, a, ext.add(Elem::ONE, a)];
    assert_eq!(gen_norm_hypersurface(&base, &ext, &basis).unwrap_err(), FamilyError::NotABasis);
}

#[test]
fn diagonal_pointless_holds_exactly_below_p() {
    let f5 = f(5, 1);
    for n in 1..=3 {
        let inst = gen_pointless_diagonal(&f5, n).unwrap();
        assert_all_pass(&inst);
    }
    assert_eq!(gen_pointless_diagonal(&f5, 4).unwrap_err(), FamilyError::BadDimension(5));
    assert!(matches!(
        gen_pointless_diagonal(&f5, 5),
        Err(FamilyError::VerificationFailure(_))
    ));
    assert!(matches!(
        gen_pointless_diagonal(&f(2, 2), 2),
        Err(FamilyError::VerificationFailure(_))
    ));
    assert_eq!(gen_pointless_diagonal(&f(3, 1), 2).unwrap_err(), FamilyError::BadDimension(3));
}

#[test]
fn pth_power_is_nonclassical_and_pointless() {
    let base = f(2, 1);
    let inst = norm_hypersurface_default(&base, 2).unwrap();
    let sq = pth_power_of(&inst).unwrap();
    assert!(sq.poly.is_pth_power());
    assert_all_pass(&sq);
}

#[test]
fn separated_sum() {
    let f3 = f(3, 1);
    let g = parse_poly("x0^3 + x0*x1^2", &f3, 2).unwrap();
    let h = parse_poly("x0^2*x1 + x1^3", &f3, 2).unwrap();
    let inst = gen_separated(&g, &h).unwrap();
    assert_eq!(
        inst.poly,
        parse_poly("x0^3 + x0*x1^2 + x2^2*x3 + x3^3", &f3, 4).unwrap()
    );
    assert_all_pass(&inst);
    let h2 = parse_poly("x0^2", &f3, 1).unwrap();
    assert_eq!(gen_separated(&g, &h2).unwrap_err(), FamilyError::DegreeMismatch(3, 2));
}

#[test]
fn fermat_type_over_cubic_extension() {
    let inst = gen_fermat_type(2, 1, 2, 2).unwrap();
    assert_eq!(inst.poly.field().order(), 8);
    assert_eq!(inst.poly.degree(), 7);
    let f10 = compute_fab(&inst.poly, 1, 0, 8).unwrap();
    assert_eq!(f10, inst.poly.pow(2).unwrap());
    assert!(!inst.has(Property::Hermitian));
    assert_all_pass(&inst);
    let herm = gen_fermat_type(2, 1, 1, 2).unwrap();
    assert!(herm.has(Property::Hermitian));
    assert_all_pass(&herm);
}

#[test]
fn hessian_determinant_examples() {
    let f5 = f(5, 1);
    let cubic = parse_poly("x0^3 + x1^3 + x2^3", &f5, 3).unwrap();
    let h = hessian_determinant(&cubic).unwrap();
    assert_eq!(h, parse_poly("216*x0*x1*x2", &f5, 3).unwrap());
    let f7 = f(7, 1);
    let quad = parse_poly("x0*x1 + x2^2", &f7, 3).unwrap();
    assert_eq!(hessian_determinant(&quad).unwrap(), parse_poly("-2", &f7, 3).unwrap().with_nominal_degree(0));
}

#[test]
fn manifest_lists_checked_properties() {
    let inst = q_plus_2_builtin("dgz").unwrap();
    let m = inst.manifest();
    assert_eq!(m["family"], "q-plus-2");
    assert_eq!(m["degree"], 4);
    let props: Vec<String> = serde_json::from_value(m["properties"].clone()).unwrap();
    assert!(props.contains(&"f10_zero(2)".to_string()));
    assert!(props.contains(&"normal_form(q_plus_2)".to_string()));
}

#[test]
fn smallest_skew_form() {
    let f3 = f(3, 1);
    let a = Matrix::from_ints(&f3, &[&[0, 1], &[-1, 0]]);
    let inst = gen_skew_form(&a).unwrap();
    assert_eq!(inst.poly, parse_poly("x0^3*x1 - x0*x1^3", &f3, 2).unwrap());
    assert_all_pass(&inst);
}

#[test]
fn standard_symplectic_prints_canonically() {
    for (p, k) in [(2, 1), (3, 1), (2, 2)] {
        let field = f(p, k);
        let q = field.order();
        let text = format!("x0^{q}*x1 - x0*x1^{q} + x2^{q}*x3 - x2*x3^{q}");
        let expected = parse_poly(&text, &field, 4).unwrap();
        let inst = gen_space_filling(&field, 3).unwrap();
        assert_eq!(inst.poly.to_string(), expected.to_string());
    }
}

#[test]
fn small_named_instances() {
    let f4 = f(2, 2);
    let g = parse_poly("x0^3 + x1^3", &f4, 2).unwrap();
    let h = parse_poly("x0^3", &f4, 1).unwrap();
    let sep = gen_separated(&g, &h).unwrap();
    assert_eq!(sep.poly, gen_hermitian(&f4, 2, 2).unwrap().poly);

    let f2 = f(2, 1);
    let ext = f2.extension(2).unwrap();
    let norm = gen_norm_hypersurface(&f2, &ext, &[Elem::ONE, ext.generator()]).unwrap();
    assert_eq!(norm.poly, parse_poly("x0^2 + x0*x1 + x1^2", &f2, 2).unwrap());

    let diag = gen_pointless_diagonal(&f(3, 1), 1).unwrap();
    assert_eq!(diag.poly, parse_poly("x0^2 + x1^2", &f(3, 1), 2).unwrap());
    assert_eq!(gen_pointless_diagonal(&f2, 1).unwrap_err(), FamilyError::BadDimension(2));

    let line = gen_hermitian(&f4, 2, 0).unwrap();
    assert_eq!(line.poly, parse_poly("x0^3", &f4, 3).unwrap());
    assert_all_pass(&line);
}

#[test]
fn q_plus_2_partials_are_cyclic() {
    for name in Q_PLUS_2_BUILTINS {
        let inst = q_plus_2_builtin(name).unwrap();
        let field = inst.poly.field().clone();
        let q = field.order();
        let want = [
            format!("x1*x2^{q} - x1^{q}*x2"),
            format!("x2*x0^{q} - x2^{q}*x0"),
            format!("x0*x1^{q} - x0^{q}*x1"),
        ];
        for (i, w) in want.iter().enumerate() {
            let d = inst.poly.partial_derivative(i).unwrap();
            assert_eq!(d, parse_poly(w, &field, 3).unwrap(), "{name} d/dx{i}");
        }
    }
}

fn skew_matrix(field: &Field, size: usize, upper: &[u32]) -> Matrix {
    let mut m = Matrix::zeros(field, size, size);
    let mut k = 0;
    for i in 0..size {
        for j in i + 1..size {
            let v = Elem(upper[k] % field.order());
            k += 1;
            m.set(i, j, v);
            m.set(j, i, field.neg(v));
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn skew_forms_verify(pk in prop::sample::select(vec![(2u64, 1u32), (3, 1), (2, 2), (5, 1)]),
                         size in prop::sample::select(vec![2usize, 4]),
                         upper in prop::collection::vec(0u32..1000, 6)) {
        let field = f(pk.0, pk.1);
        let a = skew_matrix(&field, size, &upper);
        match gen_skew_form(&a) {
            Ok(inst) => {
                prop_assert_eq!(naive_count(&inst.poly), point_count(size - 1, field.order() as u64));
                for c in inst.verify().unwrap() {
                    prop_assert!(c.passed, "{} failed", c.property);
                }
            }
            Err(FamilyError::Degenerate) => prop_assert!(a.det().is_zero()),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn hermitian_matrices_verify(diag in prop::collection::vec(0u32..2, 3),
                                 off in prop::collection::vec(0u32..4, 3)) {
        let f4 = f(2, 2);
        let mut h = Matrix::zeros(&f4, 3, 3);
        for i in 0..3 {
            h.set(i, i, Elem(diag[i]));
        }
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            let v = Elem(off[k]);
            h.set(i, j, v);
            h.set(j, i, f4.conjugate(v).unwrap());
        }
        match gen_hermitian_from_matrix(&h) {
            Ok(inst) => {
                for c in inst.verify().unwrap() {
                    prop_assert!(c.passed, "{} failed", c.property);
                }
                if !h.det().is_zero() {
                    prop_assert_eq!(naive_count(&inst.poly), 9);
                }
            }
            Err(FamilyError::NotHermitianMatrix) => prop_assert!(h.is_zero()),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn random_bases_give_pointless_norm_forms(c in prop::collection::vec(0u32..8, 9)) {
        let base = f(2, 1);
        let ext = base.extension(3).unwrap();
        let basis: Vec<Elem> = (0..3).map(|i| {
            let coeffs = [c[3 * i] % 2, c[3 * i + 1] % 2, c[3 * i + 2] % 2];
            ext.from_coeffs(&coeffs).unwrap()
        }).collect();
        match gen_norm_hypersurface(&base, &ext, &basis) {
            Ok(inst) => prop_assert_eq!(naive_count(&inst.poly), 0),
            Err(FamilyError::NotABasis) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}

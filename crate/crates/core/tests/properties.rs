use std::f64::consts::PI;

use proptest::prelude::*;

use monodromy_lab::braid::{apply_letter, braid_act, BraidWord, Letter, SignDiagonal};
use monodromy_lab::cohomology::{classical_product, pairing, quantum_product, CohClass};
use monodromy_lab::ktheory::c_gamma_matrix;
use monodromy_lab::linalg::{c, max_abs, max_abs_diff, q, CMatrix, QMatrix, Q};
use monodromy_lab::monodromy::stokes::int_matrix;
use monodromy_lab::monodromy::verify_constraints;
use monodromy_lab::report::float;
use monodromy_lab::solutions::{quantum_period, UCComplex};
use monodromy_lab::special::complex_gamma;

fn class() -> impl Strategy<Value = CohClass<Q>> {
    proptest::array::uniform4((-30i64..30, 1i64..5)).prop_map(|a| CohClass::new(a.map(|(n, d)| q(n, d))))
}

fn qparam() -> impl Strategy<Value = Q> {
    (-7i64..8, 1i64..4).prop_map(|(n, d)| q(n, d))
}

fn unipotent(n: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec(-6.0f64..6.0, n * n).prop_map(move |v| {
        CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                c(1.0, 0.0)
            } else if i < j {
                c(v[i * n + j], 0.0)
            } else {
                c(0.0, 0.0)
            }
        })
    })
}

fn general(n: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n * n)
        .prop_map(move |v| CMatrix::from_fn(n, n, |i, j| c(v[i * n + j].0, v[i * n + j].1)))
}

fn letter(n: usize) -> impl Strategy<Value = Letter> {
    (1..n, any::<bool>()).prop_map(|(index, inverse)| Letter { index, inverse })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn quantum_ring_is_commutative_associative_frobenius(a in class(), b in class(), cc in class(), t in qparam()) {
        let ab = quantum_product(&a, &b, &t);
        prop_assert_eq!(&ab, &quantum_product(&b, &a, &t));
        prop_assert_eq!(quantum_product(&ab, &cc, &t), quantum_product(&a, &quantum_product(&b, &cc, &t), &t));
        prop_assert_eq!(pairing(&ab, &cc), pairing(&a, &quantum_product(&b, &cc, &t)));
        prop_assert_eq!(quantum_product(&CohClass::unit(), &a, &t), a.clone());
    }

    #[test]
    fn quantum_product_reduces_to_cup_product(a in class(), b in class()) {
        prop_assert_eq!(quantum_product(&a, &b, &q(0, 1)), classical_product(&a, &b));
    }

    #[test]
    fn gamma_recurrence_and_reflection(x in -4.5f64..4.5, y in -3.0f64..3.0) {
        prop_assume!((x - x.round()).abs() > 1e-3 || y.abs() > 1e-3);
        let z = c(x, y);
        let g = complex_gamma(z).unwrap();
        let g1 = complex_gamma(z + 1.0).unwrap();
        prop_assert!((g1 - z * g).norm() <= 1e-12 * g1.norm().max(1e-300));
        let refl = g * complex_gamma(c(1.0, 0.0) - z).unwrap();
        let rhs = c(PI, 0.0) / (z * PI).sin();
        prop_assert!((refl - rhs).norm() <= 1e-11 * rhs.norm());
    }

    #[test]
    fn letter_and_inverse_cancel(s in unipotent(4), cm in general(4), l in letter(4)) {
        let (s1, c1) = apply_letter(l, &s, &cm).unwrap();
        let back = Letter { inverse: !l.inverse, ..l };
        let (s2, c2) = apply_letter(back, &s1, &c1).unwrap();
        let scale = 1.0 + max_abs(&s1) + max_abs(&c1);
        prop_assert!(max_abs_diff(&s2, &s) <= 1e-12 * scale);
        prop_assert!(max_abs_diff(&c2, &cm) <= 1e-12 * scale);
    }

    #[test]
    fn braid_relations(s in unipotent(4), cm in general(4), inverse in any::<bool>()) {
        let l = |index| Letter { index, inverse };
        let check = |w1: Vec<Letter>, w2: Vec<Letter>| {
            let (a1, b1) = braid_act(&BraidWord::new(w1), &s, &cm).unwrap();
            let (a2, b2) = braid_act(&BraidWord::new(w2), &s, &cm).unwrap();
            let scale = 1.0 + max_abs(&a1) + max_abs(&b1);
            max_abs_diff(&a1, &a2) <= 1e-11 * scale && max_abs_diff(&b1, &b2) <= 1e-11 * scale
        };
        prop_assert!(check(vec![l(1), l(2), l(1)], vec![l(2), l(1), l(2)]));
        prop_assert!(check(vec![l(2), l(3), l(2)], vec![l(3), l(2), l(3)]));
        prop_assert!(check(vec![l(1), l(3)], vec![l(3), l(1)]));
    }

    #[test]
    fn sign_action_is_compatible_with_transpose(s in unipotent(4), k in 0usize..16) {
        let j = SignDiagonal::from_index(4, k);
        let cm = CMatrix::identity(4, 4);
        let (js, _) = j.apply(&s, &cm);
        let (jst, _) = j.apply(&s.transpose(), &cm);
        prop_assert!(max_abs_diff(&js.transpose(), &jst) == 0.0);
        let (jjs, _) = j.apply(&js, &cm);
        prop_assert!(max_abs_diff(&jjs, &s) == 0.0);
    }

    #[test]
    fn floats_round_trip(x in proptest::num::f64::NORMAL) {
        let v = float(x);
        let back: f64 = v.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn base_point_parsing(m in 0.01f64..10.0, a in -6.0f64..6.0) {
        let z: UCComplex = format!("{m:e},{a:e}").parse().unwrap();
        prop_assert_eq!(z.modulus, m);
        prop_assert_eq!(z.arg, a);
    }

    #[test]
    fn rational_matrix_product_is_associative(v in proptest::collection::vec(-9i64..9, 27)) {
        let m = |o: usize| QMatrix::from_fn(3, |i, j| q(v[o + 3 * i + j], 1));
        let (a, b, cm) = (m(0), m(9), m(18));
        prop_assert_eq!(&(&a * &b) * &cm, &a * &(&b * &cm));
    }
}

#[test]
fn braid_action_preserves_constraint_residuals() {
    let cm = c_gamma_matrix();
    // use a pair that satisfies the constraints: (S~^{-1}, C_Gamma) is one
    let target = int_matrix(&[[1, -5, 4, -5], [0, 1, -4, 11], [0, 0, 1, -4], [0, 0, 0, 1]]);
    let base = verify_constraints(&target, &cm).unwrap();
    assert!(base.monodromy < 1e-9 && base.stokes < 1e-9, "{base:?}");
    for l in Letter::alphabet(4) {
        let (s1, c1) = apply_letter(l, &target, &cm).unwrap();
        let r = verify_constraints(&s1, &c1).unwrap();
        assert!((r.monodromy - base.monodromy).abs() < 1e-9, "{l:?} {r:?}");
        assert!((r.stokes - base.stokes).abs() < 1e-9, "{l:?} {r:?}");
    }
}

#[test]
fn period_is_single_valued() {
    let p = quantum_period(30).to_log_series();
    let z = UCComplex::polar(0.7, 0.4);
    let a = p.eval(z, 0).unwrap();
    let b = p.eval(z.rotated(2.0 * PI), 0).unwrap();
    let e = p.eval(z.rotated_eps(1), 0).unwrap();
    assert!((a - b).norm() < 1e-14 * a.norm());
    assert!((a - e).norm() < 1e-14 * a.norm());
}

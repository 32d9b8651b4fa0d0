//! Truncated bivariate Taylor arithmetic against polynomial and
//! finite-difference oracles.

use centroframe::dsl::{eval_point, eval_surface, parse_surface};
use centroframe::homogeneous::MODELS;
use centroframe::taylor::{coordinate_jets, n_coeffs, Taylor};
use proptest::prelude::*;

mod common;

use common::fd;

fn jet(degree: usize) -> impl Strategy<Value = Taylor> {
    prop::collection::vec(-2.0f64..2.0, n_coeffs(degree)).prop_map(move |c| Taylor::from_coeffs(degree, &c))
}

fn close(a: &Taylor, b: &Taylor, rel: f64) -> bool {
    let s = 1.0 + a.max_abs().max(b.max_abs());
    (*a - *b).max_abs() <= rel * s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_axioms((a, b, c) in (jet(4), jet(4), jet(4))) {
        prop_assert!(close(&((a * b) * c), &(a * (b * c)), 1e-13));
        prop_assert!(close(&(a * (b + c)), &(a * b + a * c), 1e-13));
        prop_assert!(close(&(a * b), &(b * a), 1e-13));
        prop_assert_eq!(a + b, b + a);
    }

    #[test]
    fn division_inverts_multiplication(a in jet(4), mut b in jet(4)) {
        b.set_coeff(0, 0, 1.5 + b.value().abs());
        let q = a.checked_div(&b, 1e-12).unwrap();
        prop_assert!(close(&(q * b), &a, 1e-12));
    }

    #[test]
    fn sqrt_squares_back(mut a in jet(5)) {
        a.set_coeff(0, 0, 0.5 + a.value().abs());
        let r = a.sqrt(1e-12).unwrap();
        prop_assert!(close(&(r * r), &a, 1e-12));
    }
}

/// Dense polynomial product truncated at `degree`, as the oracle for `mul`.
fn poly_mul(a: &Taylor, b: &Taylor, degree: usize) -> Vec<f64> {
    let mut out = Taylor::zero(degree);
    for i in 0..=degree {
        for j in 0..=(degree - i) {
            for k in 0..=(degree - i - j) {
                for l in 0..=(degree - i - j - k) {
                    let x = out.coeff(i + k, j + l) + a.coeff(i, j) * b.coeff(k, l);
                    out.set_coeff(i + k, j + l, x);
                }
            }
        }
    }
    out.coeffs().to_vec()
}

#[test]
fn product_matches_polynomial_oracle() {
    let one = Taylor::constant(4, 1.0);
    let (u, v) = (Taylor::var_u(4, 0.0), Taylor::var_u(4, 0.0) * 0.0 + Taylor::var_v(4, 0.0));
    let p = one + u + v;
    let q = one - u - v;
    let r = p * q;
    assert_eq!(r.coeffs(), poly_mul(&p, &q, 4).as_slice());
    assert_eq!(r.coeff(0, 0), 1.0);
    assert_eq!(r.coeff(2, 0), -1.0);
    assert_eq!(r.coeff(1, 1), -2.0);
    assert_eq!(r.coeff(0, 2), -1.0);
    assert_eq!((u * v).coeff(1, 1), 1.0);
    let a = Taylor::constant(3, 2.0) + u.truncate(3) * 0.3;
    assert!(close(&a.checked_div(&a, 1e-12).unwrap(), &Taylor::constant(3, 1.0), 1e-15));
}

#[test]
fn elementary_series() {
    let (_, v) = coordinate_jets(0.0, 0.0, 4);
    let c = v.cosh();
    let want = [1.0, 0.5, 1.0 / 24.0];
    for (k, w) in [0, 2, 4].iter().zip(want) {
        assert!((c.coeff(0, *k) - w).abs() < 1e-15);
    }
    assert_eq!(Taylor::constant(3, 4.0).sqrt(1e-12).unwrap(), Taylor::constant(3, 2.0));
    assert!(Taylor::constant(3, 0.0).sqrt(1e-12).is_err());
    assert!(Taylor::constant(3, -1.0).sqrt(1e-12).is_err());
}

#[test]
fn coordinate_jets_shape() {
    let (u, v) = coordinate_jets(0.3, 0.2, 4);
    assert_eq!(u.coeff(0, 0), 0.3);
    assert_eq!(u.coeff(1, 0), 1.0);
    assert_eq!(u.coeffs().iter().filter(|c| **c != 0.0).count(), 2);
    assert_eq!(v.coeff(0, 1), 1.0);
    let (u1, _) = coordinate_jets(0.0, 0.0, 1);
    assert_eq!(u1.coeffs().len(), 3);
}

#[test]
fn polynomial_surface_partials_are_exact() {
    let spec = parse_surface("1 + u^3 - 2*u*v^2; u*v + v^3; u^2*v; 3*u - v; 7").unwrap();
    let (u0, v0) = (0.4, -1.3);
    let jet = eval_surface(&spec, u0, v0, 4).unwrap();
    // hand derivatives of component 0: 1 + u³ − 2uv²
    let d = |a, b| jet[0].derivative(a, b);
    assert!((d(1, 0) - (3.0 * u0 * u0 - 2.0 * v0 * v0)).abs() < 1e-13);
    assert!((d(0, 1) - (-4.0 * u0 * v0)).abs() < 1e-13);
    assert!((d(2, 0) - 6.0 * u0).abs() < 1e-13);
    assert!((d(1, 1) - (-4.0 * v0)).abs() < 1e-13);
    assert!((d(0, 2) - (-4.0 * u0)).abs() < 1e-13);
    assert!((d(3, 0) - 6.0).abs() < 1e-13);
    assert!((d(1, 2) - (-4.0)).abs() < 1e-13);
    assert!(d(4, 0).abs() < 1e-13 && d(2, 2).abs() < 1e-13);
    assert!((jet[1].derivative(0, 3) - 6.0).abs() < 1e-13);
    assert!((jet[2].derivative(2, 1) - 2.0).abs() < 1e-13);
}

#[test]
fn exp_matches_finite_differences() {
    let (u, v) = coordinate_jets(0.0, 0.0, 3);
    let e = (u + v).exp();
    let f = |x: f64, y: f64| (x + y).exp();
    for a in 0..=3 {
        for b in 0..=(3 - a) {
            let got = e.derivative(a, b);
            let want = fd(&f, 0.0, 0.0, a, b);
            assert!((got - want).abs() < 1e-9 * want.abs().max(1.0), "∂{a},{b}: {got} vs {want}");
        }
    }
}

#[test]
fn builtin_jets_match_finite_differences() {
    for m in MODELS {
        let spec = m.spec();
        for &(u0, v0) in &[(0.25, -0.4), (-0.6, 0.3), (1.1, 0.9)] {
            let jet = eval_surface(&spec, u0, v0, 3).unwrap();
            let point = eval_point(&spec, u0, v0).unwrap();
            for comp in 0..5 {
                assert!((jet[comp].value() - point[comp]).abs() <= 1e-14 * point[comp].abs().max(1.0));
                let f = |x: f64, y: f64| eval_point(&spec, x, y).unwrap()[comp];
                for a in 0..=3 {
                    for b in 0..=(3 - a) {
                        let got = jet[comp].derivative(a, b);
                        let want = fd(&f, u0, v0, a, b);
                        assert!(
                            (got - want).abs() < 1e-6 * got.abs().max(1.0),
                            "{m} x{comp} ∂{a},{b} at ({u0}, {v0}): {got} vs {want}"
                        );
                    }
                }
            }
        }
    }
}

mod common;

use abelcone::canring::{lambda_top_power_value, rank, verify_relations, CanonicalClass, Monomial};
use abelcone::scalar::int;
use abelcone::{CanonicalRing, Gl2Matrix, Rational as Q};
use common::{matrix, random_class};
use proptest::prelude::*;

fn ring(g: usize) -> CanonicalRing {
    CanonicalRing::new(g).unwrap()
}

fn class_pair() -> impl Strategy<Value = (CanonicalClass<Q>, CanonicalClass<Q>)> {
    (1usize..=3).prop_flat_map(|g| {
        (0..=g).prop_flat_map(move |r| (0..=2 * g - r).prop_flat_map(move |s| (random_class(g, r), random_class(g, s))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn table_product_matches_forms((x, y) in class_pair()) {
        let r = ring(x.g());
        prop_assert_eq!(r.mul(&x, &y).unwrap(), r.mul_via_forms(&x, &y).unwrap());
    }

    #[test]
    fn form_roundtrip(x in (1usize..=3).prop_flat_map(|g| (0..=2 * g).prop_flat_map(move |r| random_class(g, r)))) {
        let r = ring(x.g());
        let f = r.to_form(&x).unwrap();
        prop_assert_eq!(r.extract(&f, x.degree()).unwrap(), x);
    }

    #[test]
    fn gl2_is_a_ring_map((x, y) in class_pair(), m in matrix(3)) {
        let r = ring(x.g());
        let lhs = r.gl2_act(&m, &r.mul(&x, &y).unwrap()).unwrap();
        let rhs = r.mul(&r.gl2_act(&m, &x).unwrap(), &r.gl2_act(&m, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gl2_scales_mu(g in 1usize..=3, m in matrix(3)) {
        let r = ring(g);
        let det = m.det();
        prop_assert_eq!(r.gl2_act(&m, &r.mu::<Q>()).unwrap(), r.mu::<Q>().scale(&(det.clone() * det)));
    }

    // pullback reverses composition: (M₁M₂)·x = M₂·(M₁·x)
    #[test]
    fn gl2_composition(x in (1usize..=3).prop_flat_map(|g| (0..=2 * g).prop_flat_map(move |r| random_class(g, r))),
                       m1 in matrix(3), m2 in matrix(3)) {
        let r = ring(x.g());
        let lhs = r.gl2_act(&m1.mul(&m2), &x).unwrap();
        let rhs = r.gl2_act(&m2, &r.gl2_act(&m1, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_ab_power_vanishes(g in 1usize..=3, a in common::rational(6, 5), b in common::rational(6, 5)) {
        let r = ring(g);
        let t = abelcone::canring::theta_ab(g, &a, &b);
        prop_assert!(r.pow(&t, g + 1).unwrap().is_zero());
    }
}

#[test]
fn left_composition_fails_in_general() {
    let r = ring(2);
    let m1 = Gl2Matrix::new(int(1), int(1), int(0), int(1));
    let m2 = Gl2Matrix::new(int(1), int(0), int(1), int(1));
    let x = r.generator::<Q>(abelcone::Generator::Theta1);
    let left = r.gl2_act(&m1, &r.gl2_act(&m2, &x).unwrap()).unwrap();
    assert_ne!(r.gl2_act(&m1.mul(&m2), &x).unwrap(), left);
}

#[test]
fn pairing_is_perfect() {
    for g in 1..=3 {
        let r = ring(g);
        for k in 0..=2 * g {
            let m = r.pairing_matrix(k).unwrap();
            assert_eq!(rank(&m), r.dim(k), "g = {g}, degree {k}");
            assert_eq!(r.dim(k), r.dim(2 * g - k));
        }
    }
}

#[test]
fn lambda_top_power() {
    for g in 1..=4 {
        let r = ring(g);
        let l = r.monomial::<Q>(Monomial::new(0, 0, 2 * g as u32));
        assert_eq!(l.top_value(), Some(lambda_top_power_value(g)), "g = {g}");
    }
    assert_eq!(lambda_top_power_value(3), int(-720));
}

#[test]
fn relations_g4() {
    let rep = verify_relations(4).unwrap();
    assert!(rep.all_hold, "{:?}", rep.checks.iter().filter(|c| !c.holds).collect::<Vec<_>>());
}

#[test]
fn relations_g1_include_theta1_squared() {
    let rep = verify_relations(1).unwrap();
    assert!(rep.checks.iter().any(|c| c.name == "theta1^(g+1)" && c.statement.contains("t1^2") && c.holds));
}

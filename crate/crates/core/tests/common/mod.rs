#![allow(dead_code)]

use abelcone::canring::CanonicalClass;
use abelcone::exterior::Form;
use abelcone::scalar::rat;
use abelcone::{CanonicalRing, Gl2Matrix, Rational as Q};
use num_complex::Complex;
use proptest::prelude::*;

pub fn rational(max: i64, den: i64) -> impl Strategy<Value = Q> {
    (-max..=max, 1..=den).prop_map(|(p, q)| rat(p, q))
}

pub fn gaussian(max: i64, den: i64) -> impl Strategy<Value = Complex<Q>> {
    (rational(max, den), rational(max, den)).prop_map(|(a, b)| Complex::new(a, b))
}

pub fn six(max: i64, den: i64) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(rational(max, den), 6)
}

pub fn class_of(ring: &CanonicalRing, degree: usize, coeffs: Vec<Q>) -> CanonicalClass<Q> {
    ring.class(degree, coeffs).unwrap()
}

pub fn random_class(g: usize, degree: usize) -> impl Strategy<Value = CanonicalClass<Q>> {
    let ring = CanonicalRing::new(g).unwrap();
    let dim = ring.dim(degree);
    proptest::collection::vec(rational(5, 4), dim).prop_map(move |c| CanonicalClass::from_coords(g, degree, c))
}

pub fn matrix(max: i64) -> impl Strategy<Value = Gl2Matrix<Q>> {
    (rational(max, 3), rational(max, 3), rational(max, 3), rational(max, 3))
        .prop_map(|(a, b, c, d)| Gl2Matrix::new(a, b, c, d))
}

/// Integer matrices with determinant ±1 or ±2.
pub fn invertible_integer_matrix() -> impl Strategy<Value = Gl2Matrix<Q>> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter("invertible", |(a, b, c, d)| a * d - b * c != 0)
        .prop_map(|(a, b, c, d)| Gl2Matrix::new(rat(a, 1), rat(b, 1), rat(c, 1), rat(d, 1)))
}

/// A homogeneous form of total degree `deg` on `C^dim` with up to six terms.
pub fn homogeneous_form(dim: usize, deg: usize) -> impl Strategy<Value = Form<Q>> {
    let idx: Vec<usize> = (0..dim).collect();
    let term = (deg.saturating_sub(dim)..=deg.min(dim)).prop_flat_map(move |p| {
        (
            proptest::sample::subsequence(idx.clone(), p),
            proptest::sample::subsequence(idx.clone(), deg - p),
            gaussian(4, 3),
        )
    });
    proptest::collection::vec(term, 0..=6).prop_map(move |terms| {
        terms.into_iter().fold(Form::zero(dim), |f, (h, a, c)| &f + &Form::monomial(dim, &h, &a, c))
    })
}

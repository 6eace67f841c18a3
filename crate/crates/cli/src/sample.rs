//! Seeded random inputs for the reproduction suite and `fourier-check`.

use abelcone::canring::CanonicalClass;
use abelcone::exterior::{mask_indices, subsets_lex};
use abelcone::fourier::CohClass;
use abelcone::positivity::is_semipositive;
use abelcone::scalar::rat;
use abelcone::{CanonicalRing, Rational as Q};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `p/q` with `|p| ≤ pmax`, `1 ≤ q ≤ qmax`.
pub fn rational(rng: &mut ChaCha8Rng, pmax: i64, qmax: i64) -> Q {
    rat(rng.gen_range(-pmax..=pmax), rng.gen_range(1..=qmax))
}

/// A random element of `H²` of an abelian variety of dimension `n`.
pub fn h2_class(rng: &mut ChaCha8Rng, n: usize) -> CohClass {
    subsets_lex(2 * n, 2).into_iter().fold(CohClass::zero(n), |acc, m| {
        let c = rational(rng, 3, 3);
        acc.add(&CohClass::blade(n, &mask_indices(m), c)).expect("same n")
    })
}

/// A random homogeneous class of degree `deg`.
pub fn coh_class(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> CohClass {
    subsets_lex(2 * n, deg).into_iter().fold(CohClass::zero(n), |acc, m| {
        let c = rational(rng, 3, 2);
        acc.add(&CohClass::blade(n, &mask_indices(m), c)).expect("same n")
    })
}

/// Rejection sampling of a `g = 2` degree-2 class accepted by the exact
/// semipositivity test. Coordinates lie on the lattice `Z/4` inside
/// `a₁, a₃ ∈ [0, 3]`, `a₂ ∈ [0, 5]`, `a₄, a₅ ∈ [−2, 2]`, `a₆ ∈ [−1, 1]`.
pub fn semipositive_class(rng: &mut ChaCha8Rng, ring: &CanonicalRing) -> CanonicalClass<Q> {
    loop {
        let mut q = |lo: i64, hi: i64| rat(rng.gen_range(lo * 4..=hi * 4), 4);
        let c = vec![q(0, 3), q(0, 5), q(0, 3), q(-2, 2), q(-2, 2), q(-1, 1)];
        let x = ring.class(2, c).expect("six coordinates");
        if is_semipositive(ring, &x).expect("degree 2").is_member() {
            return x;
        }
    }
}

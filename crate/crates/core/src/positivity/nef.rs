//! The canonical nef cone in codimension 2 for `g = 2`.
//!
//! A class is nef iff it pairs nonnegatively with every `θ_{a,1}·θ_{b,1}`.
//! Writing the pairing as `P(a, b) = α(b)a² + β(b)a + γ(b)`, `P ≥ 0` on `R²`
//! iff, for every real `b`, `α(b) ≥ 0`, `γ(b) ≥ 0` and
//! `Q(b) = 4α(b)γ(b) − β(b)² ≥ 0`. Each of the three is a univariate
//! statement decided by [`poly_nonneg`].

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::semi::item;
use super::{six_coords, Certificate, ConeVerdict, DivisorPairWitness, InequalityReport, Status};
use crate::canring::{theta_ab, CanonicalClass, CanonicalRing};
use crate::error::{Error, Result};
use crate::poly::{poly_nonneg, SturmTranscript, UniPoly};
use crate::scalar::int;
use crate::Rational as Q;

const RULE: &str = "nef iff the pairing with every product of two boundary divisors theta_{a,1} theta_{b,1} is nonnegative";

/// `x · θ_{a,1} · θ_{b,1}` computed by ring multiplication, normalized so
/// that `θ₁² · θ_{a,1} · θ_{b,1} = 1` (the raw intersection number is four
/// times this value).
pub fn pair_with_divisors(ring: &CanonicalRing, x: &CanonicalClass<Q>, a: &Q, b: &Q) -> Result<Q> {
    require_g2(ring.g(), x)?;
    let one = int(1);
    let d = ring.mul(&theta_ab(2, a, &one), &theta_ab(2, b, &one))?;
    Ok(ring.pairing(x, &d)? / int(4))
}

/// The closed-form sextic `a₃a²b² − a₅ab(a+b) + (a₂−a₆)(a²+b²) − (a₂−6a₆)ab
/// − a₄(a+b) + a₁`.
pub fn pair_with_divisors_polynomial(x: &CanonicalClass<Q>, a: &Q, b: &Q) -> Result<Q> {
    let [a1, a2, a3, a4, a5, a6] = six_coords(x)?;
    let ab = a.clone() * b.clone();
    let s = a.clone() + b.clone();
    Ok(a3 * ab.clone() * ab.clone() - a5 * ab.clone() * s.clone()
        + (a2.clone() - a6.clone()) * (a.clone() * a.clone() + b.clone() * b.clone())
        - (a2 - int(6) * a6) * ab
        - a4 * s
        + a1)
}

/// `(α, β, γ, Q)` as polynomials in `b`.
pub fn nef_polynomials(x: &CanonicalClass<Q>) -> Result<[UniPoly<Q>; 4]> {
    let [a1, a2, a3, a4, a5, a6] = six_coords(x)?;
    let d = a2.clone() - a6.clone();
    let alpha = UniPoly::new(vec![d.clone(), -a5.clone(), a3]);
    let beta = UniPoly::new(vec![-a4.clone(), -(a2 - int(6) * a6), -a5]);
    let gamma = UniPoly::new(vec![a1, -a4, d]);
    let q = alpha.mul(&gamma).scale(&int(4)).sub(&beta.mul(&beta));
    Ok([alpha, beta, gamma, q])
}

/// Transcripts proving `α, γ, Q ≥ 0` on `R`, plus the scalar inequalities
/// they imply.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NefCertificate {
    pub alpha: SturmTranscript,
    pub gamma: SturmTranscript,
    pub discriminant: SturmTranscript,
    pub inequalities: InequalityReport,
}

impl NefCertificate {
    pub fn revalidate(&self, x: &CanonicalClass<Q>) -> Result<bool> {
        let [alpha, _, gamma, q] = nef_polynomials(x)?;
        let fresh = nef_inequalities(x)?;
        Ok([(&self.alpha, &alpha), (&self.gamma, &gamma), (&self.discriminant, &q)]
            .iter()
            .all(|(t, p)| t.poly == p.coeffs() && t.nonnegative && t.revalidate())
            && fresh == self.inequalities
            && fresh.all_hold)
    }
}

/// The scalar consequences `a₁, a₃ ≥ 0`, `a₂ ≥ a₆`, `4a₁(a₂−a₆) ≥ a₄²`,
/// `4a₃(a₂−a₆) ≥ a₅²` together with the quantified quartic condition.
pub fn nef_inequalities(x: &CanonicalClass<Q>) -> Result<InequalityReport> {
    let [a1, a2, a3, a4, a5, a6] = six_coords(x)?;
    let d = a2 - a6;
    let zero = Q::zero();
    let q = nef_polynomials(x)?[3].clone();
    Ok(InequalityReport::new(vec![
        item("e1", "a1, a3 >= 0", a1 >= zero && a3 >= zero),
        item("e3", "a2 >= a6", d >= zero),
        item("e4", "4 a1 (a2 - a6) >= a4^2", int(4) * a1 * d.clone() >= a4.clone() * a4),
        item("e5", "4 a3 (a2 - a6) >= a5^2", int(4) * a3 * d >= a5.clone() * a5),
        item(
            "e6",
            "(a5 b^2 + (a2 - 6 a6) b + a4)^2 <= 4 (a3 b^2 - a5 b + a2 - a6)((a2 - a6) b^2 - a4 b + a1) for all real b",
            poly_nonneg(&q).0,
        ),
    ]))
}

fn require_g2(g: usize, x: &CanonicalClass<Q>) -> Result<()> {
    if g != 2 || x.g() != 2 {
        return Err(Error::UnsupportedGenus { g: x.g(), min: 2, max: 2 });
    }
    super::require_degree(x, 2)
}

/// Exact nef test for a degree-2 class at `g = 2`.
pub fn is_nef_canonical(ring: &CanonicalRing, x: &CanonicalClass<Q>) -> Result<ConeVerdict> {
    require_g2(ring.g(), x)?;
    let [alpha, beta, gamma, q] = nef_polynomials(x)?;
    let (alpha_ok, alpha_b, alpha_t) = poly_nonneg(&alpha);
    let (gamma_ok, gamma_b, gamma_t) = poly_nonneg(&gamma);
    let (q_ok, q_b, q_t) = poly_nonneg(&q);
    if alpha_ok && gamma_ok && q_ok {
        let cert = NefCertificate {
            alpha: alpha_t,
            gamma: gamma_t,
            discriminant: q_t,
            inequalities: nef_inequalities(x)?,
        };
        return Ok(ConeVerdict::new(Status::Member, RULE, Certificate::Nef(cert)));
    }
    let (a, b) = if let Some(b) = alpha_b {
        // α(b) < 0: P → −∞ as a → ∞
        let (al, be, ga) = (alpha.eval(&b).abs(), beta.eval(&b).abs(), gamma.eval(&b).abs());
        let big = (be + ga + int(1)) / al + int(1);
        (big, b)
    } else if let Some(b) = gamma_b {
        (Q::zero(), b)
    } else {
        let b = q_b.expect("one of the three conditions failed");
        let (al, be, ga) = (alpha.eval(&b), beta.eval(&b), gamma.eval(&b));
        if al.is_zero() {
            (-(ga + int(1)) / be, b)
        } else {
            (-be / (int(2) * al), b)
        }
    };
    let value = pair_with_divisors(ring, x, &a, &b)?;
    if !value.is_negative() {
        return Err(Error::Unsupported("nef refutation did not produce a negative pairing".into()));
    }
    let cert = Certificate::DivisorPair(DivisorPairWitness { a, b, value });
    Ok(ConeVerdict::new(Status::NonMember, RULE, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canring::Monomial;
    use crate::scalar::rat;

    fn ring() -> CanonicalRing {
        CanonicalRing::new(2).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let r = ring();
        for t in [int(0), rat(3, 2), int(-1)] {
            let mu = r.mu_t(&t);
            assert_eq!(pair_with_divisors(&r, &mu, &int(1), &int(1)).unwrap(), int(4) + int(4) * t.clone());
            assert_eq!(pair_with_divisors(&r, &mu, &int(1), &int(-1)).unwrap(), int(12) - int(8) * t);
        }
        let t1sq = r.monomial(Monomial::new(2, 0, 0));
        assert_eq!(pair_with_divisors(&r, &t1sq, &rat(5, 7), &int(-3)).unwrap(), int(1));
    }

    #[test]
    fn ring_and_polynomial_agree() {
        let r = ring();
        let x = r
            .class(2, vec![rat(1, 2), int(3), int(-2), rat(5, 3), int(1), rat(-1, 4)])
            .unwrap();
        for (a, b) in [(int(0), int(0)), (rat(1, 3), int(-2)), (int(5), rat(7, 2))] {
            assert_eq!(
                pair_with_divisors(&r, &x, &a, &b).unwrap(),
                pair_with_divisors_polynomial(&x, &a, &b).unwrap()
            );
        }
    }

    #[test]
    fn mu_t_nef_range() {
        let r = ring();
        for t in [int(-1), int(0), int(1), rat(3, 2)] {
            let x = r.mu_t(&t);
            let v = is_nef_canonical(&r, &x).unwrap();
            assert!(v.is_member(), "t = {t}");
            assert!(v.revalidate(&r, &x).unwrap());
        }
        for t in [rat(-101, 100), rat(151, 100)] {
            let x = r.mu_t(&t);
            let v = is_nef_canonical(&r, &x).unwrap();
            assert!(v.is_non_member(), "t = {t}");
            assert!(v.revalidate(&r, &x).unwrap());
        }
    }

    #[test]
    fn degenerate_leading_coefficient() {
        // α ≡ 0 while γ < 0 somewhere: not nef
        let r = ring();
        let x = r.class(2, vec![int(-1), int(1), int(0), int(0), int(0), int(1)]).unwrap();
        let v = is_nef_canonical(&r, &x).unwrap();
        assert!(v.is_non_member());
        assert!(v.revalidate(&r, &x).unwrap());
    }
}

//! Membership oracles for the positivity cones of canonical classes.
//!
//! Every oracle returns a [`ConeVerdict`] whose certificate can be re-checked
//! by [`ConeVerdict::revalidate`] through a route that does not reuse the
//! decision procedure (second characteristic-polynomial algorithm, direct
//! wedge evaluation, ring multiplication of the generators).

pub mod hermitian;
pub mod lp;
pub mod nef;
pub mod psef;
pub mod semi;
pub mod sym2;
pub mod weak;

use num_complex::Complex;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::canring::{CanonicalClass, CanonicalRing};
use crate::error::{Error, Result};
use crate::poly::SturmTranscript;
use crate::Rational as Q;

pub use hermitian::{HermitianMatrix, PsdCertificate};
pub use nef::{is_nef_canonical, nef_polynomials, pair_with_divisors, pair_with_divisors_polynomial, NefCertificate};
pub use psef::{psef_curve_test, psef_divisor_test};
pub use semi::{hermitian_matrix, is_semipositive, semi_inequalities, InequalityItem, InequalityReport};
pub use sym2::{decompose_sym2, default_grid, general_g_semi_decomposition, Decomposition, GridPoint, LpMode, Sym2Generator};
pub use weak::{weak_positivity_oracle, CovectorWitness, WeakOptions, WeakSearchReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Member,
    NonMember,
    Unknown,
}

/// Outcome of a cone test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConeVerdict {
    pub status: Status,
    /// `false` for a `Member` verdict that rests on numerical search only.
    pub certified: bool,
    /// The rule that produced the verdict.
    pub rule: String,
    pub certificate: Certificate,
}

impl ConeVerdict {
    pub fn new(status: Status, rule: &str, certificate: Certificate) -> Self {
        ConeVerdict { status, certified: true, rule: rule.to_string(), certificate }
    }

    pub fn is_member(&self) -> bool {
        self.status == Status::Member
    }

    pub fn is_non_member(&self) -> bool {
        self.status == Status::NonMember
    }

    /// Re-check the certificate against `x`.
    ///
    /// `Unknown` verdicts and supported-only memberships carry no claim and
    /// revalidate trivially.
    pub fn revalidate(&self, ring: &CanonicalRing, x: &CanonicalClass<Q>) -> Result<bool> {
        if self.status == Status::Unknown || !self.certified {
            return Ok(true);
        }
        let member = self.status == Status::Member;
        Ok(match &self.certificate {
            Certificate::Psd(c) => {
                let h = hermitian_matrix(ring, x)?;
                let e = hermitian::coefficients_to_e(&h.charpoly_faddeev())?;
                member && e == c.elementary_symmetric && e.iter().all(|v| !v.is_negative())
            }
            Certificate::HermitianVector(w) => {
                let h = hermitian_matrix(ring, x)?;
                let q = h.quadratic_form(&w.vector);
                !member && q.im.is_zero() && q.re == w.value && w.value.is_negative()
            }
            Certificate::DivisorPair(w) => {
                let via_ring = pair_with_divisors(ring, x, &w.a, &w.b)?;
                let via_poly = pair_with_divisors_polynomial(x, &w.a, &w.b)?;
                !member && via_ring == w.value && via_poly == w.value && w.value.is_negative()
            }
            Certificate::Nef(c) => member && c.revalidate(x)?,
            Certificate::Covectors(w) => !member && w.revalidate(ring, x)?,
            Certificate::Decomposition(d) => member && d.revalidate(ring, x)?,
            Certificate::Inequalities(r) => {
                let fresh = match x.degree() {
                    1 => psef::divisor_report(x)?,
                    d if d + 1 == 2 * ring.g() => psef::curve_report(ring, x)?,
                    2 => semi_inequalities(x)?,
                    _ => return Err(Error::Unsupported("inequality report for this degree".into())),
                };
                fresh == *r && r.all_hold == member
            }
            Certificate::Sturm(t) => t.revalidate(),
            Certificate::Search(_) | Certificate::None => false,
        })
    }
}

/// A rational vector in `∧²` with `v* H v < 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HermitianCounterexample {
    #[serde(serialize_with = "crate::serde_q::complex_vec")]
    pub vector: Vec<Complex<Q>>,
    #[serde(serialize_with = "crate::serde_q::scalar")]
    pub value: Q,
}

/// Parameters with `x · θ_{a,1} · θ_{b,1} < 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivisorPairWitness {
    #[serde(serialize_with = "crate::serde_q::scalar")]
    pub a: Q,
    #[serde(serialize_with = "crate::serde_q::scalar")]
    pub b: Q,
    #[serde(serialize_with = "crate::serde_q::scalar")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Psd(PsdCertificate),
    HermitianVector(HermitianCounterexample),
    DivisorPair(DivisorPairWitness),
    Nef(NefCertificate),
    Covectors(CovectorWitness),
    Decomposition(Decomposition),
    Inequalities(InequalityReport),
    Sturm(SturmTranscript),
    Search(WeakSearchReport),
    None,
}

pub(crate) fn require_degree(x: &CanonicalClass<Q>, degree: usize) -> Result<()> {
    if x.degree() != degree {
        return Err(Error::DegreeMismatch { expected: degree.to_string(), found: x.degree().to_string() });
    }
    Ok(())
}

/// The six coordinates `(a₁, …, a₆)` of a degree-2 class in the basis
/// `θ₁², θ₁θ₂, θ₂², θ₁λ, θ₂λ, λ²` (requires `g ≥ 2`).
pub fn six_coords(x: &CanonicalClass<Q>) -> Result<[Q; 6]> {
    require_degree(x, 2)?;
    if x.g() < 2 {
        return Err(Error::UnsupportedGenus { g: x.g(), min: 2, max: crate::canring::MAX_GENUS });
    }
    let c = x.coeffs();
    if c.len() != 6 {
        return Err(Error::DimensionMismatch { left: c.len(), right: 6 });
    }
    Ok([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone(), c[5].clone()])
}

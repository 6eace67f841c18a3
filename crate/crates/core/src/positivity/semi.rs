//! The semipositive cone: classes whose Hermitian form on `∧^k V` is
//! positive semidefinite.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::hermitian::{HermitianMatrix, PsdCertificate};
use super::{six_coords, Certificate, ConeVerdict, HermitianCounterexample, Status};
use crate::canring::{CanonicalClass, CanonicalRing};
use crate::error::{Error, Result};
use crate::scalar::int;
use crate::Rational as Q;

const RULE_PSD: &str = "semipositive iff the associated hermitian form is positive semidefinite";

/// The Hermitian form of `x` on `∧^k C^{2g}`, `k = deg x`, in the
/// lexicographic basis of `k`-subsets.
pub fn hermitian_matrix(ring: &CanonicalRing, x: &CanonicalClass<Q>) -> Result<HermitianMatrix<Q>> {
    if x.is_beyond_top() {
        return Err(Error::DegreeMismatch {
            expected: format!("at most {}", 2 * ring.g()),
            found: x.degree().to_string(),
        });
    }
    HermitianMatrix::from_form(&ring.to_form(x)?, x.degree())
}

/// Exact semipositivity test.
pub fn is_semipositive(ring: &CanonicalRing, x: &CanonicalClass<Q>) -> Result<ConeVerdict> {
    super::require_degree(x, 2)?;
    let h = hermitian_matrix(ring, x)?;
    semipositive_verdict(&h)
}

pub(crate) fn semipositive_verdict(h: &HermitianMatrix<Q>) -> Result<ConeVerdict> {
    let e = h.elementary_symmetric()?;
    if e.iter().all(|v| !v.is_negative()) {
        let cert = Certificate::Psd(PsdCertificate { elementary_symmetric: e });
        return Ok(ConeVerdict::new(Status::Member, RULE_PSD, cert));
    }
    let v = h.negative_vector().ok_or_else(|| {
        Error::Unsupported("negative characteristic coefficient without a negative vector".into())
    })?;
    let q = h.quadratic_form(&v);
    debug_assert!(q.im.is_zero() && q.re.is_negative());
    let cert = Certificate::HermitianVector(HermitianCounterexample { vector: v, value: q.re });
    Ok(ConeVerdict::new(Status::NonMember, RULE_PSD, cert))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityItem {
    pub name: String,
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub items: Vec<InequalityItem>,
    pub all_hold: bool,
}

impl InequalityReport {
    pub(crate) fn new(items: Vec<InequalityItem>) -> Self {
        let all_hold = items.iter().all(|i| i.holds);
        InequalityReport { items, all_hold }
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.items.iter().find(|i| i.name == name).map(|i| i.holds)
    }
}

pub(crate) fn item(name: &str, statement: &str, holds: bool) -> InequalityItem {
    InequalityItem { name: name.to_string(), statement: statement.to_string(), holds }
}

/// The principal-minor inequalities for a degree-2 class with coordinates
/// `a₁θ₁² + a₂θ₁θ₂ + a₃θ₂² + a₄θ₁λ + a₅θ₂λ + a₆λ²`.
pub fn semi_inequalities(x: &CanonicalClass<Q>) -> Result<InequalityReport> {
    let [a1, a2, a3, a4, a5, a6] = six_coords(x)?;
    let zero = Q::zero();
    let two = int(2);
    let s = a2.clone() + two.clone() * a6.clone();
    let det = (a1.clone() * a3.clone() - a6.clone() * a6.clone()) * s.clone()
        + two.clone() * a4.clone() * a5.clone() * a6.clone();
    let det_rhs = a3.clone() * a4.clone() * a4.clone() + a1.clone() * a5.clone() * a5.clone();
    Ok(InequalityReport::new(vec![
        item("a1", "a1, a2, a3 >= 0", a1 >= zero && a2 >= zero && a3 >= zero),
        item("a2", "a2 >= 2|a6|", a2 >= two * a6.abs()),
        item("a3", "a1(a2 + 2a6) >= a4^2", a1.clone() * s.clone() >= a4.clone() * a4.clone()),
        item("a4", "a3(a2 + 2a6) >= a5^2", a3.clone() * s >= a5.clone() * a5.clone()),
        item("a5", "a1 a3 >= a6^2", a1 * a3 >= a6.clone() * a6),
        item("a6", "(a1 a3 - a6^2)(a2 + 2a6) + 2 a4 a5 a6 >= a3 a4^2 + a1 a5^2", det >= det_rhs),
    ]))
}

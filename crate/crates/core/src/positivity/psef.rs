//! Pseudoeffective divisors and curves in the canonical ring.
//!
//! Both cones are the cone `{a₁ ≥ 0, a₂ ≥ 0, a₁a₂ ≥ a₃²}`: in degree one on
//! the coordinates of `a₁θ₁ + a₂θ₂ + a₃λ`, in degree `2g − 1` on the
//! coordinates in the basis `μ^{g−1}θ₁, μ^{g−1}θ₂, μ^{g−1}λ`.

use num_traits::Zero;

use super::semi::item;
use super::{Certificate, ConeVerdict, InequalityReport, Status};
use crate::canring::{CanonicalClass, CanonicalRing};
use crate::error::Result;
use crate::Rational as Q;

const RULE_DIVISOR: &str = "psef divisor iff a1 >= 0, a2 >= 0, a1 a2 >= a3^2 on (theta1, theta2, lambda)";
const RULE_CURVE: &str =
    "psef curve iff a1 >= 0, a2 >= 0, a1 a2 >= a3^2 on (mu^(g-1) theta1, mu^(g-1) theta2, mu^(g-1) lambda)";

fn cone_report(a1: &Q, a2: &Q, a3: &Q) -> InequalityReport {
    let zero = Q::zero();
    InequalityReport::new(vec![
        item("a1", "a1 >= 0", *a1 >= zero),
        item("a2", "a2 >= 0", *a2 >= zero),
        item("a1a2", "a1 a2 >= a3^2", a1.clone() * a2.clone() >= a3.clone() * a3.clone()),
    ])
}

pub(crate) fn divisor_report(x: &CanonicalClass<Q>) -> Result<InequalityReport> {
    super::require_degree(x, 1)?;
    let c = x.coeffs();
    Ok(cone_report(&c[0], &c[1], &c[2]))
}

pub(crate) fn curve_report(ring: &CanonicalRing, x: &CanonicalClass<Q>) -> Result<InequalityReport> {
    let [a1, a2, a3] = ring.mu_power_coords(x)?;
    Ok(cone_report(&a1, &a2, &a3))
}

fn verdict(report: InequalityReport, rule: &str) -> ConeVerdict {
    let status = if report.all_hold { Status::Member } else { Status::NonMember };
    ConeVerdict::new(status, rule, Certificate::Inequalities(report))
}

pub fn psef_divisor_test(x: &CanonicalClass<Q>) -> Result<ConeVerdict> {
    Ok(verdict(divisor_report(x)?, RULE_DIVISOR))
}

pub fn psef_curve_test(ring: &CanonicalRing, x: &CanonicalClass<Q>) -> Result<ConeVerdict> {
    Ok(verdict(curve_report(ring, x)?, RULE_CURVE))
}

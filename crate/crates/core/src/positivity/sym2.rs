//! Decomposition of degree-2 canonical classes into products of two
//! divisors from the pencil `ϑ(a) = θ₁ + a²θ₂ + aλ`, plus the limit point
//! `ϑ(∞) = θ₂`.
//!
//! The products `ϑ(a)ϑ(b)` have coordinates
//! `(1, a²+b², a²b², a+b, ab(a+b), ab)`; the limit generators are
//! `θ₂ϑ(b) = (0, 1, b², 0, b, 0)` and `θ₂²`. A nonnegative combination over a
//! finite grid is found by linear programming; a found combination is a
//! membership proof, a failed search is not a refutation.

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::lp::{feasible, LpOutcome};
use super::semi::is_semipositive;
use super::{six_coords, Certificate, ConeVerdict, Status};
use crate::canring::{theta_ab, CanonicalClass, CanonicalRing};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, rat, Scalar};
use crate::Rational as Q;

const RULE_MEMBER: &str = "nonnegative combination of products of two pencil divisors";
const RULE_UNKNOWN: &str = "no nonnegative combination over the grid; semipositivity does not refute";

/// Whether the LP search runs in exact arithmetic or in `f64` followed by an
/// exact re-solve on the support it found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LpMode {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GridPoint {
    Finite(Q),
    Infinity,
}

impl GridPoint {
    /// `ϑ(a)`, or `θ₂` at infinity.
    pub fn divisor(&self, g: usize) -> CanonicalClass<Q> {
        match self {
            GridPoint::Finite(a) => theta_ab(g, &Q::one(), a),
            GridPoint::Infinity => theta_ab(g, &Q::zero(), &Q::one()),
        }
    }
}

impl std::fmt::Display for GridPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GridPoint::Finite(a) => write!(f, "{}", format_rational(a)),
            GridPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for GridPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `weight · ϑ(p) · ϑ(q)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sym2Generator {
    pub p: GridPoint,
    pub q: GridPoint,
    #[serde(serialize_with = "crate::serde_q::scalar")]
    pub weight: Q,
}

impl Sym2Generator {
    /// Coordinates of `ϑ(p)ϑ(q)` by the closed formula.
    pub fn coords(p: &GridPoint, q: &GridPoint) -> [Q; 6] {
        use GridPoint::*;
        match (p, q) {
            (Finite(a), Finite(b)) => {
                let ab = a.clone() * b.clone();
                let s = a.clone() + b.clone();
                [
                    int(1),
                    a.clone() * a.clone() + b.clone() * b.clone(),
                    ab.clone() * ab.clone(),
                    s.clone(),
                    ab.clone() * s,
                    ab,
                ]
            }
            (Infinity, Finite(b)) | (Finite(b), Infinity) => {
                [int(0), int(1), b.clone() * b.clone(), int(0), b.clone(), int(0)]
            }
            (Infinity, Infinity) => [int(0), int(0), int(1), int(0), int(0), int(0)],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub terms: Vec<Sym2Generator>,
}

impl Decomposition {
    /// Recompute `Σ wᵢ ϑ(pᵢ)ϑ(qᵢ)` by ring multiplication at the genus of
    /// `ring` and compare with `x`.
    pub fn revalidate(&self, ring: &CanonicalRing, x: &CanonicalClass<Q>) -> Result<bool> {
        if self.terms.iter().any(|t| t.weight < Q::zero()) {
            return Ok(false);
        }
        let g = ring.g();
        let mut acc = ring.zero::<Q>(2);
        for t in &self.terms {
            let prod = ring.mul(&t.p.divisor(g), &t.q.divisor(g))?;
            acc = acc.add(&prod.scale(&t.weight))?;
        }
        Ok(acc.coeffs() == x.coeffs() && x.degree() == 2)
    }

    /// The same combination read as a class at genus `g`.
    pub fn class(&self, ring: &CanonicalRing) -> Result<CanonicalClass<Q>> {
        let mut c = vec![Q::zero(); 6];
        for t in &self.terms {
            for (ci, v) in c.iter_mut().zip(Sym2Generator::coords(&t.p, &t.q)) {
                *ci = ci.clone() + t.weight.clone() * v;
            }
        }
        ring.class(2, c)
    }
}

/// `{p/q : |p| ≤ pmax, 1 ≤ q ≤ qmax}`, sorted, without repeats.
pub fn rational_grid(pmax: i64, qmax: i64) -> Vec<Q> {
    let mut v: Vec<Q> = (1..=qmax).flat_map(|q| (-pmax..=pmax).map(move |p| rat(p, q))).collect();
    v.sort();
    v.dedup();
    v
}

/// The grid with numerators `|p| ≤ 4` and denominators up to 3.
pub fn default_grid() -> Vec<Q> {
    rational_grid(4, 3)
}

fn columns(grid: &[Q]) -> Vec<(GridPoint, GridPoint)> {
    let mut pts: Vec<GridPoint> = grid.iter().cloned().map(GridPoint::Finite).collect();
    pts.sort();
    pts.dedup();
    pts.push(GridPoint::Infinity);
    let mut out = Vec::new();
    for i in 0..pts.len() {
        for j in i..pts.len() {
            out.push((pts[i].clone(), pts[j].clone()));
        }
    }
    out
}

fn solve<T: Scalar>(cols: &[[Q; 6]], target: &[Q; 6]) -> Option<Vec<T>> {
    let a: Vec<Vec<T>> = (0..6).map(|r| cols.iter().map(|c| T::from_rational(&c[r])).collect()).collect();
    let b: Vec<T> = target.iter().map(T::from_rational).collect();
    match feasible(&a, &b) {
        LpOutcome::Feasible(w) => Some(w),
        LpOutcome::Infeasible => None,
    }
}

/// Search for a decomposition over `grid ∪ {∞}`.
pub fn find_decomposition(x: &CanonicalClass<Q>, grid: &[Q], mode: LpMode) -> Result<Option<Decomposition>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let target = six_coords(x)?;
    let pairs = columns(grid);
    let cols: Vec<[Q; 6]> = pairs.iter().map(|(p, q)| Sym2Generator::coords(p, q)).collect();
    let support: Vec<usize> = match mode {
        LpMode::Exact => (0..cols.len()).collect(),
        LpMode::Float => match solve::<f64>(&cols, &target) {
            Some(w) => (0..cols.len()).filter(|&j| w[j] > 1e-12).collect(),
            None => return Ok(None),
        },
    };
    let sub: Vec<[Q; 6]> = support.iter().map(|&j| cols[j].clone()).collect();
    let Some(w) = solve::<Q>(&sub, &target) else {
        return Ok(None);
    };
    let terms = support
        .iter()
        .zip(w)
        .filter(|(_, w)| !w.is_zero())
        .map(|(&j, weight)| Sym2Generator { p: pairs[j].0.clone(), q: pairs[j].1.clone(), weight })
        .collect();
    Ok(Some(Decomposition { terms }))
}

/// Sym² membership for a degree-2 class. A refutation is only ever reported
/// through a failure of semipositivity, which contains the cone.
pub fn decompose_sym2(
    ring: &CanonicalRing,
    x: &CanonicalClass<Q>,
    grid: &[Q],
    mode: LpMode,
) -> Result<ConeVerdict> {
    six_coords(x)?;
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let semi = is_semipositive(ring, x)?;
    if semi.is_non_member() {
        return Ok(semi);
    }
    match find_decomposition(x, grid, mode)? {
        Some(d) => {
            debug_assert!(d.revalidate(ring, x).unwrap_or(false));
            Ok(ConeVerdict::new(Status::Member, RULE_MEMBER, Certificate::Decomposition(d)))
        }
        None => Ok(ConeVerdict::new(Status::Unknown, RULE_UNKNOWN, Certificate::None)),
    }
}

/// Semipositivity by decomposition at any `g ≥ 2`. The decomposition is
/// found from the six coordinates alone and must re-validate both at the
/// genus of `ring` and at `g = 2`.
pub fn general_g_semi_decomposition(ring: &CanonicalRing, x: &CanonicalClass<Q>) -> Result<ConeVerdict> {
    let v = decompose_sym2(ring, x, &default_grid(), LpMode::Exact)?;
    if let Certificate::Decomposition(d) = &v.certificate {
        let r2 = CanonicalRing::new(2)?;
        let x2 = r2.class(2, x.coeffs().to_vec())?;
        if !d.revalidate(ring, x)? || !d.revalidate(&r2, &x2)? {
            return Err(Error::Unsupported("decomposition does not transport across genera".into()));
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canring::Monomial;

    fn ring() -> CanonicalRing {
        CanonicalRing::new(2).unwrap()
    }

    #[test]
    fn grid_size() {
        assert_eq!(default_grid().len(), 19);
        assert_eq!(columns(&default_grid()).len(), 20 * 21 / 2);
    }

    #[test]
    fn closed_formula_matches_ring() {
        let r = ring();
        let pts = [GridPoint::Finite(rat(-3, 2)), GridPoint::Finite(int(2)), GridPoint::Infinity];
        for p in &pts {
            for q in &pts {
                let prod = r.mul(&p.divisor(2), &q.divisor(2)).unwrap();
                assert_eq!(prod.coeffs(), &Sym2Generator::coords(p, q)[..]);
            }
        }
    }

    #[test]
    fn theta1_theta2_needs_infinity() {
        let r = ring();
        let x = r.monomial(Monomial::new(1, 1, 0));
        for mode in [LpMode::Exact, LpMode::Float] {
            let v = decompose_sym2(&r, &x, &default_grid(), mode).unwrap();
            assert!(v.is_member());
            assert!(v.revalidate(&r, &x).unwrap());
        }
    }

    #[test]
    fn non_semipositive_is_refuted() {
        let r = ring();
        let x = r.mu_t(&int(1));
        let v = decompose_sym2(&r, &x, &default_grid(), LpMode::Exact).unwrap();
        assert!(v.is_non_member());
    }

    #[test]
    fn mu_is_member_and_transports() {
        let r3 = CanonicalRing::new(3).unwrap();
        let x = r3.mu_t(&int(0));
        let v = general_g_semi_decomposition(&r3, &x).unwrap();
        assert!(v.is_member());
        assert!(v.revalidate(&r3, &x).unwrap());
    }

    #[test]
    fn empty_grid() {
        let r = ring();
        let x = r.mu_t(&int(0));
        assert_eq!(decompose_sym2(&r, &x, &[], LpMode::Exact), Err(Error::EmptyGrid));
    }
}

//! Univariate polynomials and exact real-root reasoning.
//!
//! [`poly_nonneg`] decides `p(b) ≥ 0 for all real b` over the rationals with a
//! certificate in both directions: a rational point where `p < 0`, or a
//! factorization `p = c · q · r²` with `c > 0` and `q` root-free on `R`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::scalar::{format_rational, Scalar};
use crate::serde_q;

type Q = BigRational;

/// Coefficients in ascending degree; the leading coefficient is nonzero unless
/// the polynomial is zero (then `coeffs` is empty).
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_negligible()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `b`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, b: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * b.clone() + c.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &[T], i: usize| v.get(i).cloned().unwrap_or_else(T::zero);
        Self::new((0..n).map(|i| get(&self.coeffs, i) + get(&o.coeffs, i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-T::one()))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![T::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            rem[k + dd] = T::zero();
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(T::one() / self.leading()))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient, `None` if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl fmt::Display for UniPoly<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}*b", format_rational(c)),
                _ => format!("{}*b^{i}", format_rational(c)),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Yun's square-free decomposition: monic `a_1, a_2, …` with
/// `p = lc(p) · ∏ a_i^i`, pairwise coprime and square-free.
pub fn square_free_decomposition(p: &UniPoly<Q>) -> Vec<UniPoly<Q>> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_exact(&a0).unwrap().monic();
    let mut c = dp.div_exact(&a0).unwrap().scale(&(Q::one() / p.leading()));
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a).unwrap();
        c = d.div_exact(&a).unwrap();
        d = c.sub(&b.derivative());
        out.push(a);
    }
    out
}

/// Signed remainder sequence `p, p', −rem(p, p'), …`.
pub fn sturm_sequence(p: &UniPoly<Q>) -> Vec<UniPoly<Q>> {
    let mut seq = vec![p.clone()];
    if p.is_zero() {
        return seq;
    }
    let mut next = p.derivative();
    while !next.is_zero() {
        let r = seq.last().unwrap().div_rem(&next).1.scale(&-Q::one());
        seq.push(next);
        next = r;
    }
    seq
}

fn count_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sign_of(q: &Q) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign variations of the sequence at a point.
pub fn variations_at(seq: &[UniPoly<Q>], x: &Q) -> usize {
    count_changes(seq.iter().map(|p| sign_of(&p.eval(x))))
}

/// Sign variations at `+∞` (`positive = true`) or `−∞`.
pub fn variations_at_infinity(seq: &[UniPoly<Q>], positive: bool) -> usize {
    count_changes(seq.iter().map(|p| {
        let s = sign_of(&p.leading());
        let odd = p.degree().unwrap_or(0) % 2 == 1;
        if !positive && odd {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots of a square-free `p`.
pub fn count_real_roots(seq: &[UniPoly<Q>]) -> usize {
    variations_at_infinity(seq, false) - variations_at_infinity(seq, true)
}

/// Number of distinct roots of a square-free `p` in `(l, r]`, `p(l) ≠ 0`.
pub fn count_roots_in(seq: &[UniPoly<Q>], l: &Q, r: &Q) -> usize {
    variations_at(seq, l).saturating_sub(variations_at(seq, r))
}

/// `1 + max |a_i / a_n|`: every real root lies strictly inside `(−B, B)`.
pub fn cauchy_bound(p: &UniPoly<Q>) -> Q {
    let lead = p.leading().abs();
    let m = p.coeffs()[..p.coeffs().len().saturating_sub(1)]
        .iter()
        .map(|c| c.abs() / lead.clone())
        .fold(Q::zero(), |a, b| if b > a { b } else { a });
    m + Q::one()
}

/// Evidence for the answer of [`poly_nonneg`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SturmTranscript {
    #[serde(serialize_with = "serde_q::vec")]
    pub poly: Vec<Q>,
    /// `p = scale · odd_part · cofactor²` when `p` is nonzero.
    #[serde(serialize_with = "serde_q::scalar")]
    pub scale: Q,
    #[serde(serialize_with = "serde_q::vec")]
    pub odd_part: Vec<Q>,
    #[serde(serialize_with = "serde_q::vec")]
    pub cofactor: Vec<Q>,
    /// Sturm sequence of `odd_part`.
    #[serde(serialize_with = "serde_q::matrix")]
    pub sturm: Vec<Vec<Q>>,
    pub real_roots_of_odd_part: usize,
    pub nonnegative: bool,
    #[serde(serialize_with = "serde_q::option")]
    pub witness: Option<Q>,
    #[serde(serialize_with = "serde_q::option")]
    pub witness_value: Option<Q>,
}

impl SturmTranscript {
    /// Re-check the transcript against its polynomial without reusing the
    /// decision path: the factorization is multiplied out, the Sturm sequence
    /// is recomputed, and the witness is evaluated.
    pub fn revalidate(&self) -> bool {
        let p = UniPoly::new(self.poly.clone());
        if let Some(b) = &self.witness {
            let v = p.eval(b);
            return !self.nonnegative
                && v.is_negative()
                && self.witness_value.as_ref() == Some(&v);
        }
        if !self.nonnegative {
            return false;
        }
        if p.is_zero() {
            return true;
        }
        let odd = UniPoly::new(self.odd_part.clone());
        let co = UniPoly::new(self.cofactor.clone());
        if !self.scale.is_positive() || odd.leading().is_negative() {
            return false;
        }
        if odd.mul(&co).mul(&co).scale(&self.scale) != p {
            return false;
        }
        let seq = sturm_sequence(&odd);
        let sturm: Vec<Vec<Q>> = seq.iter().map(|q| q.coeffs().to_vec()).collect();
        sturm == self.sturm && count_real_roots(&seq) == 0 && self.real_roots_of_odd_part == 0
    }
}

/// Decide `p(b) ≥ 0` for every real `b`.
pub fn poly_nonneg(p: &UniPoly<Q>) -> (bool, Option<Q>, SturmTranscript) {
    let mut t = SturmTranscript {
        poly: p.coeffs().to_vec(),
        scale: Q::one(),
        odd_part: vec![Q::one()],
        cofactor: vec![Q::one()],
        sturm: Vec::new(),
        real_roots_of_odd_part: 0,
        nonnegative: true,
        witness: None,
        witness_value: None,
    };
    if p.is_zero() {
        t.scale = Q::zero();
        return (true, None, t);
    }
    let lead = p.leading();
    let factors = square_free_decomposition(p);
    let mut odd = UniPoly::constant(Q::one());
    let mut cofactor = UniPoly::constant(Q::one());
    for (i, a) in factors.iter().enumerate() {
        let mult = i + 1;
        if mult % 2 == 1 {
            odd = odd.mul(a);
        }
        for _ in 0..mult / 2 {
            cofactor = cofactor.mul(a);
        }
    }
    let seq = sturm_sequence(&odd);
    let roots = count_real_roots(&seq);
    t.scale = lead.abs();
    t.sturm = seq.iter().map(|q| q.coeffs().to_vec()).collect();
    t.real_roots_of_odd_part = roots;
    t.cofactor = cofactor.coeffs().to_vec();
    if lead.is_positive() {
        t.odd_part = odd.coeffs().to_vec();
    } else {
        t.odd_part = odd.scale(&-Q::one()).coeffs().to_vec();
    }
    if lead.is_positive() && roots == 0 {
        return (true, None, t);
    }
    let b = negative_point(p, &odd, &seq, lead.is_negative());
    let v = p.eval(&b);
    debug_assert!(v.is_negative());
    t.nonnegative = false;
    t.witness = Some(b.clone());
    t.witness_value = Some(v);
    (false, Some(b), t)
}

/// A rational point where `p < 0`, given that `p` has negative leading
/// coefficient or its odd-multiplicity part `odd` has a real root.
fn negative_point(p: &UniPoly<Q>, odd: &UniPoly<Q>, odd_seq: &[UniPoly<Q>], negative_lead: bool) -> Q {
    let bound = cauchy_bound(p);
    if negative_lead {
        // p → −∞ at +∞; past every root p has the sign of its leading term
        return bound;
    }
    let radical = p.div_exact(&p.gcd(&p.derivative())).unwrap();
    let rad_seq = sturm_sequence(&radical);
    let two = Q::from_integer(2.into());

    // isolate one root of `odd` in (l, r], with l and r off the roots of p
    let nonroot = |x: &Q| !radical.eval(x).is_zero() && !odd.eval(x).is_zero();
    let (mut l, mut r) = (-bound.clone(), bound.clone());
    loop {
        if nonroot(&l) && nonroot(&r) && count_roots_in(&rad_seq, &l, &r) == 1 {
            break;
        }
        let m = (l.clone() + r.clone()) / two.clone();
        if odd.eval(&m).is_zero() {
            return around_exact_root(p, &radical, &rad_seq, &m);
        }
        if count_roots_in(odd_seq, &l, &m) >= 1 {
            r = m;
        } else {
            l = m;
        }
        // an even-multiplicity root on an endpoint: pull the endpoint inward
        let mut step = (r.clone() - l.clone()) / two.clone();
        while !nonroot(&l) {
            let cand = l.clone() + step.clone();
            if nonroot(&cand) && count_roots_in(odd_seq, &cand, &r) >= 1 {
                l = cand;
            }
            step /= two.clone();
        }
        let mut step = (r.clone() - l.clone()) / two.clone();
        while !nonroot(&r) {
            let cand = r.clone() - step.clone();
            if nonroot(&cand) && count_roots_in(odd_seq, &l, &cand) >= 1 {
                r = cand;
            }
            step /= two.clone();
        }
    }
    // l < ρ < r, p has constant nonzero sign on (l, ρ) and on (ρ, r]
    for x in [&l, &r] {
        if p.eval(x).is_negative() {
            return x.clone();
        }
    }
    unreachable!("odd-multiplicity root changes the sign")
}

fn around_exact_root(p: &UniPoly<Q>, radical: &UniPoly<Q>, rad_seq: &[UniPoly<Q>], m: &Q) -> Q {
    let mut delta = Q::one();
    loop {
        let (l, r) = (m.clone() - delta.clone(), m.clone() + delta.clone());
        if !radical.eval(&l).is_zero()
            && !radical.eval(&r).is_zero()
            && count_roots_in(rad_seq, &l, &r) == 1
        {
            for x in [&l, &r] {
                if p.eval(x).is_negative() {
                    return x.clone();
                }
            }
            unreachable!("odd-multiplicity root changes the sign");
        }
        delta /= Q::from_integer(2.into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn poly(c: &[i64]) -> UniPoly<Q> {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn simple_cases() {
        assert!(poly_nonneg(&poly(&[1, 0, 1])).0);
        let (ok, w, t) = poly_nonneg(&poly(&[-1, 0, 1]));
        assert!(!ok);
        assert!(poly(&[-1, 0, 1]).eval(&w.unwrap()).is_negative());
        assert!(t.revalidate());
        assert!(poly_nonneg(&UniPoly::zero()).0);
        assert!(!poly_nonneg(&poly(&[0, 1])).0);
        assert!(!poly_nonneg(&poly(&[-1])).0);
        assert!(poly_nonneg(&poly(&[3])).0);
    }

    #[test]
    fn double_roots_are_fine() {
        // (b − 1)²(b + 2)²
        let p = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[2, 1])).mul(&poly(&[2, 1]));
        let (ok, _, t) = poly_nonneg(&p);
        assert!(ok);
        assert!(t.revalidate());
        // (b − 1)³(b − 2)
        let p = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[-1, 1])).mul(&poly(&[-2, 1]));
        let (ok, w, t) = poly_nonneg(&p);
        assert!(!ok);
        assert!(p.eval(&w.unwrap()).is_negative());
        assert!(t.revalidate());
    }

    #[test]
    fn narrow_negative_dip() {
        // (b − 1/1000)(b − 2/1000) dips negative on a tiny interval
        let p = UniPoly::new(vec![rat(1, 1000), int(-1)]).mul(&UniPoly::new(vec![rat(-2, 1000), int(1)]));
        let p = p.scale(&int(-1));
        let (ok, w, _) = poly_nonneg(&p);
        assert!(!ok);
        assert!(p.eval(&w.unwrap()).is_negative());
    }

    #[test]
    fn yun_recovers_multiplicities() {
        let p = poly(&[-1, 1]).mul(&poly(&[2, 1])).mul(&poly(&[2, 1])).scale(&int(3));
        let f = square_free_decomposition(&p);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0], poly(&[-1, 1]));
        assert_eq!(f[1], poly(&[2, 1]));
    }

    #[test]
    fn sturm_counts_roots() {
        let p = poly(&[0, -1, 0, 1]); // b³ − b
        let seq = sturm_sequence(&p);
        assert_eq!(count_real_roots(&seq), 3);
        assert_eq!(count_roots_in(&seq, &rat(-1, 2), &int(2)), 2);
    }

    #[test]
    fn forged_transcript_is_rejected() {
        let (_, _, mut t) = poly_nonneg(&poly(&[1, 0, 1]));
        t.poly = poly(&[-1, 0, 1]).coeffs().to_vec();
        assert!(!t.revalidate());
    }

    #[test]
    fn division_roundtrip() {
        let a = poly(&[5, -3, 0, 2, 1]);
        let d = poly(&[1, 1]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
    }
}

//! Self-products `E^{×n}` of an elliptic curve with complex multiplication:
//! endomorphism orders, rank-one strongly positive generators, decomposable
//! `k`-vectors, and explicit classes that are semipositive but not strongly
//! positive.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::canring::CanonicalRing;
use crate::error::{Error, Result};
use crate::exterior::{mask_indices, merge_sign, Form, Mask, Multivector, MAX_DIM};
use crate::positivity::{weak_positivity_oracle, HermitianMatrix, Status, WeakOptions};
use crate::scalar::{format_rational, i_pow, int, parse_rational};
use crate::{GaussianRational, Rational as Q};

/// An element of `∧^k C^n`.
pub type KVector = Multivector<GaussianRational>;

/// `a + b√D` in the imaginary quadratic field `Q(√D)`, `D < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElem {
    pub d: i64,
    pub a: Q,
    pub b: Q,
}

impl QuadElem {
    pub fn new(d: i64, a: Q, b: Q) -> Self {
        QuadElem { d, a, b }
    }

    pub fn zero(d: i64) -> Self {
        QuadElem::new(d, Q::zero(), Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadElem::new(self.d, self.a.clone() + o.a.clone(), self.b.clone() + o.b.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadElem::new(self.d, self.a.clone() - o.a.clone(), self.b.clone() - o.b.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = int(self.d);
        QuadElem::new(
            self.d,
            self.a.clone() * o.a.clone() + d * self.b.clone() * o.b.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.a.clone(),
        )
    }

    /// Complex conjugation, `√D ↦ −√D`.
    pub fn conj(&self) -> Self {
        QuadElem::new(self.d, self.a.clone(), -self.b.clone())
    }

    /// `|x|² = a² − D b²`.
    pub fn norm(&self) -> Q {
        self.a.clone() * self.a.clone() - int(self.d) * self.b.clone() * self.b.clone()
    }

    /// As a Gaussian rational; only possible when `D = −1` or `b = 0`.
    pub fn to_gaussian(&self) -> Option<GaussianRational> {
        match (self.d, self.b.is_zero()) {
            (_, true) => Some(Complex::new(self.a.clone(), Q::zero())),
            (-1, false) => Some(Complex::new(self.a.clone(), self.b.clone())),
            _ => None,
        }
    }

    pub fn to_complex_f64(&self) -> Complex<f64> {
        let s = (-(self.d as f64)).sqrt();
        Complex::new(crate::Scalar::to_f64(&self.a), crate::Scalar::to_f64(&self.b) * s)
    }
}

impl std::fmt::Display for QuadElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + {}*sqrt({})", format_rational(&self.a), format_rational(&self.b), self.d)
    }
}

/// The maximal order `Z[ω]` of `Q(√D)`: `ω = (1+√D)/2` when `D ≡ 1 (mod 4)`,
/// `ω = √D` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CmOrder {
    d: i64,
}

impl CmOrder {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::InvalidArgument(format!("discriminant {d} is not negative")));
        }
        Ok(CmOrder { d })
    }

    /// `Z[i]`.
    pub fn gaussian() -> Self {
        CmOrder { d: -1 }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn omega(&self) -> QuadElem {
        if self.d.rem_euclid(4) == 1 {
            QuadElem::new(self.d, Q::new(1.into(), 2.into()), Q::new(1.into(), 2.into()))
        } else {
            QuadElem::new(self.d, Q::zero(), Q::one())
        }
    }

    /// `m + kω`.
    pub fn element(&self, m: i64, k: i64) -> QuadElem {
        QuadElem::new(self.d, int(m), Q::zero()).add(&self.omega().mul(&QuadElem::new(self.d, int(k), Q::zero())))
    }

    /// Integer coordinates of `x` on `(1, ω)`, if `x ∈ Z[ω]`.
    pub fn coordinates(&self, x: &QuadElem) -> Option<(i64, i64)> {
        let w = self.omega();
        let k = x.b.clone() / w.b.clone();
        let m = x.a.clone() - k.clone() * w.a.clone();
        if !k.is_integer() || !m.is_integer() {
            return None;
        }
        Some((i64::try_from(m.to_integer()).ok()?, i64::try_from(k.to_integer()).ok()?))
    }

    /// `ω² ∈ Z + Zω`, so `Z[ω]` is a ring.
    pub fn is_closed(&self) -> bool {
        let w = self.omega();
        self.coordinates(&w.mul(&w)).is_some()
    }

    /// `1` and `ω` are R-linearly independent in `C`.
    pub fn spans_c(&self) -> bool {
        !self.omega().b.is_zero()
    }
}

/// The rank-one form `iℓ∧ℓ̄` for `ℓ = Σ s_j dz_j`, held as the Hermitian
/// matrix `H_jk = s_j conj(s_k)` over `Q(√D)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StrongGenerator {
    pub n: usize,
    pub matrix: Vec<Vec<QuadElem>>,
}

impl StrongGenerator {
    /// `i Σ H_jk dz_j ∧ dz̄_k` over the Gaussian rationals.
    pub fn to_form(&self) -> Result<Form<Q>> {
        let mut f = Form::zero(self.n);
        let i: GaussianRational = i_pow(1);
        for (j, row) in self.matrix.iter().enumerate() {
            for (k, h) in row.iter().enumerate() {
                let c = h.to_gaussian().ok_or_else(|| {
                    Error::Unsupported(format!("coefficient {h} is not a Gaussian rational"))
                })?;
                f = &f + &Form::monomial(self.n, &[j], &[k], c * i.clone());
            }
        }
        Ok(f)
    }

    /// The matrix in double precision, for any `D`.
    pub fn to_matrix_f64(&self) -> Vec<Vec<Complex<f64>>> {
        self.matrix.iter().map(|r| r.iter().map(QuadElem::to_complex_f64).collect()).collect()
    }

    /// Exact check that `H` is Hermitian, positive semidefinite and of rank
    /// one: real nonnegative diagonal, not all zero, vanishing 2×2 minors.
    pub fn is_rank_one_psd(&self) -> bool {
        let h = &self.matrix;
        let n = self.n;
        let herm = (0..n).all(|j| (0..n).all(|k| h[j][k] == h[k][j].conj()));
        let diag_ok = (0..n).all(|j| h[j][j].b.is_zero() && !h[j][j].a.is_negative());
        let nonzero = (0..n).any(|j| !h[j][j].is_zero());
        let minors = (0..n).all(|a| {
            (a + 1..n).all(|b| {
                (0..n).all(|c| {
                    (c + 1..n).all(|d| h[a][c].mul(&h[b][d]).sub(&h[a][d].mul(&h[b][c])).is_zero())
                })
            })
        });
        herm && diag_ok && nonzero && minors
    }
}

/// `iℓ∧ℓ̄` for `ℓ = s_1 dz_1 + … + s_n dz_n` with `s_j ∈ Z[ω]`.
pub fn strong1_generator(order: &CmOrder, s: &[QuadElem]) -> Result<StrongGenerator> {
    if s.iter().all(QuadElem::is_zero) {
        return Err(Error::AllZero);
    }
    if s.len() > MAX_DIM {
        return Err(Error::DimensionMismatch { left: s.len(), right: MAX_DIM });
    }
    for x in s {
        if x.d != order.d || order.coordinates(x).is_none() {
            return Err(Error::InvalidArgument(format!("{x} is not in the order of discriminant {}", order.d)));
        }
    }
    let matrix = s.iter().map(|x| s.iter().map(|y| x.mul(&y.conj())).collect()).collect();
    Ok(StrongGenerator { n: s.len(), matrix })
}

/// Interior product of the basis `(k−1)`-covector on `mask` into `alpha`.
fn contract(alpha: &KVector, mask: Mask) -> KVector {
    KVector::from_terms(
        alpha.dim(),
        alpha.terms().filter(|(m, _)| *m & mask == mask).map(|(m, c)| {
            let rest = m & !mask;
            (rest, if merge_sign(mask, rest) { -c.clone() } else { c.clone() })
        }),
    )
}

/// Whether `alpha` is a wedge of vectors, by the Plücker relations
/// `(ι_ξ α) ∧ α = 0` for every basis `(k−1)`-covector `ξ`. Mixed-degree
/// input is never decomposable.
pub fn is_decomposable(alpha: &KVector) -> bool {
    if alpha.is_zero() {
        return true;
    }
    let Some(k) = alpha.homogeneous_grade() else {
        return false;
    };
    if k <= 1 {
        return true;
    }
    crate::exterior::subsets_lex(alpha.dim(), k - 1)
        .into_iter()
        .all(|xi| contract(alpha, xi).wedge(alpha).map(|w| w.is_zero()).unwrap_or(false))
}

/// The holomorphic form `Σ a_I dz_I` of a `k`-vector.
pub fn kvector_form(alpha: &KVector) -> Form<Q> {
    let mut f = Form::zero(alpha.dim());
    for (m, c) in alpha.terms() {
        f = &f + &Form::monomial(alpha.dim(), &mask_indices(*m), &[], c.clone());
    }
    f
}

/// `i^{k²} α ∧ ᾱ`.
pub fn eta_of(alpha: &KVector) -> Result<Form<Q>> {
    let k = alpha.homogeneous_grade().unwrap_or(0);
    let a = kvector_form(alpha);
    Ok(a.wedge(&a.conj())?.scale(&i_pow((k * k) as i64)))
}

/// `(dz₁∧dz₂ + dz₃∧dz₄) ∧ dz₅ ∧ … ∧ dz_{k+2}` in `∧^k C^n`.
pub fn standard_alpha(n: usize, k: usize) -> KVector {
    let tail: Vec<usize> = (4..k + 2).collect();
    let mut first = vec![0, 1];
    first.extend(&tail);
    let mut second = vec![2, 3];
    second.extend(&tail);
    let one = || Complex::new(Q::one(), Q::zero());
    &KVector::blade(n, &first, one()) + &KVector::blade(n, &second, one())
}

/// `μ_t = 4θ₁θ₂ + tλ²` in the coordinates `z₁..z₄` of `C⁴`, wedged with
/// `i dz_j ∧ dz̄_j` for `j = k+3..n`.
pub fn separating_form(n: usize, k: usize, t: &Q) -> Result<Form<Q>> {
    let ring = CanonicalRing::new(2)?;
    let mu = ring.to_form(&ring.mu_t(t))?;
    let mut phi = Form::zero(n);
    for (idx, c) in mu.terms() {
        phi = &phi + &Form::monomial(n, &mask_indices(idx.holo), &mask_indices(idx.anti), c.clone());
    }
    for j in k + 2..n {
        phi = phi.wedge(&Form::i_dz_dzbar(n, j, j))?;
    }
    Ok(phi)
}

/// A class `η = i^{k²}α∧ᾱ` with `α` not decomposable, together with a
/// weakly positive `φ` such that `∫ η ∧ φ < 0`.
///
/// `φ` is `μ_t` on the first four coordinates with `|t| ≤ 1` times
/// coordinate `(1,1)`-forms; the weak positivity of `μ_t` for `|t| ≤ 1`
/// is a theorem, and the weak oracle is run on the `C⁴` factor as a
/// numerical cross-check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CmWitness {
    pub n: usize,
    pub k: usize,
    /// `α` as `(indices, re, im)` triples, indices 0-based.
    pub alpha: Vec<(Vec<usize>, String, String)>,
    pub t: String,
    pub pairing: String,
    pub eta_rank: usize,
}

/// Everything [`CmWitness::revalidate`] re-derives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmWitnessCheck {
    pub eta_psd: bool,
    pub eta_rank_one: bool,
    pub alpha_not_decomposable: bool,
    pub t_in_weak_range: bool,
    pub weak_oracle_supports_phi: bool,
    pub pairing_matches: bool,
    pub pairing_negative: bool,
}

impl CmWitnessCheck {
    pub fn all(&self) -> bool {
        self.eta_psd
            && self.eta_rank_one
            && self.alpha_not_decomposable
            && self.t_in_weak_range
            && self.weak_oracle_supports_phi
            && self.pairing_matches
            && self.pairing_negative
    }
}

impl CmWitness {
    pub fn alpha_kvector(&self) -> Result<KVector> {
        let mut a = KVector::zero(self.n);
        for (idx, re, im) in &self.alpha {
            let re = parse_rational(re).ok_or_else(|| Error::InvalidArgument(format!("bad rational {re}")))?;
            let im = parse_rational(im).ok_or_else(|| Error::InvalidArgument(format!("bad rational {im}")))?;
            if idx.iter().any(|&i| i >= self.n) {
                return Err(Error::InvalidArgument(format!("index out of range in {idx:?}")));
            }
            a = &a + &KVector::blade(self.n, idx, Complex::new(re, im));
        }
        Ok(a)
    }

    pub fn t_value(&self) -> Result<Q> {
        parse_rational(&self.t).ok_or_else(|| Error::InvalidArgument(format!("bad rational {}", self.t)))
    }

    /// Recompute every claim from `α` and `t` alone.
    pub fn revalidate(&self) -> Result<CmWitnessCheck> {
        let alpha = self.alpha_kvector()?;
        let t = self.t_value()?;
        let eta = eta_of(&alpha)?;
        let h = HermitianMatrix::from_form(&eta, self.k)?;
        let rank = h.rank_psd()?;
        let phi = separating_form(self.n, self.k, &t)?;
        let value = eta.wedge(&phi)?.top_scalar()?;
        let ring = CanonicalRing::new(2)?;
        let weak = weak_positivity_oracle(&ring, &ring.mu_t(&t), &WeakOptions::default())?;
        let recorded = parse_rational(&self.pairing);
        Ok(CmWitnessCheck {
            eta_psd: h.is_psd()?,
            eta_rank_one: rank == 1 && self.eta_rank == 1,
            alpha_not_decomposable: !is_decomposable(&alpha),
            t_in_weak_range: t.abs() <= Q::one(),
            weak_oracle_supports_phi: weak.status == Status::Member,
            pairing_matches: recorded.as_ref() == Some(&value),
            pairing_negative: value.is_negative(),
        })
    }
}

/// Search `t ∈ {±1, ±3/4, ±1/2, ±1/4}` for the most negative pairing of
/// `η = i^{k²}α∧ᾱ` (with [`standard_alpha`]) against [`separating_form`].
/// `Ok(None)` when no candidate separates.
pub fn semi_not_strong_witness(n: usize, k: usize) -> Result<Option<CmWitness>> {
    if k < 2 || k + 2 > n {
        return Err(Error::InvalidArgument(format!("need 2 <= k <= n - 2, got n = {n}, k = {k}")));
    }
    if n > 8 {
        return Err(Error::InvalidArgument(format!("n = {n} is beyond the supported range")));
    }
    let alpha = standard_alpha(n, k);
    let eta = eta_of(&alpha)?;
    let mut best: Option<(Q, Q)> = None;
    for num in [4i64, -4, 3, -3, 2, -2, 1, -1] {
        let t = Q::new(num.into(), 4.into());
        let v = eta.wedge(&separating_form(n, k, &t)?)?.top_scalar()?;
        if v.is_negative() && best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, t));
        }
    }
    let Some((value, t)) = best else { return Ok(None) };
    let h = HermitianMatrix::from_form(&eta, k)?;
    let alpha_terms = alpha
        .terms()
        .map(|(m, c)| (mask_indices(*m), format_rational(&c.re), format_rational(&c.im)))
        .collect();
    Ok(Some(CmWitness {
        n,
        k,
        alpha: alpha_terms,
        t: format_rational(&t),
        pairing: format_rational(&value),
        eta_rank: h.rank_psd()?,
    }))
}

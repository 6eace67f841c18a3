//! Rational cohomology of an abelian variety `B` of dimension `n` as the
//! exterior algebra on `H¹(B, Q) = Q^{2n}`, with Poincaré duality, the
//! Fourier transform `d: H^{2n−ℓ}(B) → H^ℓ(B̂)` and the Pontryagin product.
//!
//! Basis `e_0, …, e_{2n−1}`; the dual torus uses the same indices, so
//! `H₁(B) ≅ H¹(B̂)` is the identity matrix. With `e_{2j} = dx_j`,
//! `e_{2j+1} = dy_j` and `dz_j = dx_j + i dy_j`, the transform `d` is the Hodge
//! star of the standard metric and orientation.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{merge_sign, Mask, Multivector};
use crate::scalar::{factorial, format_rational};
use crate::Rational as Q;

/// Largest `n` supported.
pub const MAX_N: usize = 4;

/// An element of `H•(B, Q)` (or of `H•(B̂, Q)`; the two are not
/// distinguished by type).
#[derive(Clone, Debug, PartialEq)]
pub struct CohClass {
    n: usize,
    v: Multivector<Q>,
}

impl CohClass {
    pub fn new(n: usize, v: Multivector<Q>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidArgument(format!("abelian dimension {n} outside 1..={MAX_N}")));
        }
        if v.dim() != 2 * n {
            return Err(Error::DimensionMismatch { left: v.dim(), right: 2 * n });
        }
        Ok(CohClass { n, v })
    }

    pub fn zero(n: usize) -> Self {
        CohClass { n, v: Multivector::zero(2 * n) }
    }

    /// The fundamental class `1 ∈ H⁰`.
    pub fn one(n: usize) -> Self {
        CohClass { n, v: Multivector::one(2 * n) }
    }

    /// The class of a point, `e_0 ∧ … ∧ e_{2n−1}`; the Pontryagin unit.
    pub fn point(n: usize) -> Self {
        CohClass { n, v: Multivector::top(2 * n) }
    }

    /// `c · e_{i_1} ∧ … ∧ e_{i_k}`.
    pub fn blade(n: usize, indices: &[usize], c: Q) -> Self {
        CohClass { n, v: Multivector::blade(2 * n, indices, c) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multivector(&self) -> &Multivector<Q> {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    /// Degree if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        self.v.homogeneous_grade()
    }

    /// Coefficient of the point class.
    pub fn top_value(&self) -> Q {
        self.v.coefficient(full(self.n))
    }

    /// Coefficient of `1`.
    pub fn constant(&self) -> Q {
        self.v.coefficient(0)
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(CohClass { n: self.n, v: self.v.wedge(&o.v)? })
    }

    pub fn pow(&self, k: usize) -> Self {
        CohClass { n: self.n, v: self.v.pow(k) }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(CohClass { n: self.n, v: &self.v + &o.v })
    }

    pub fn scale(&self, c: &Q) -> Self {
        CohClass { n: self.n, v: self.v.scale(c) }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch { left: self.n, right: o.n });
        }
        Ok(())
    }

    fn map_terms(&self, f: impl Fn(Mask) -> (Mask, bool)) -> Self {
        let terms = self.v.terms().map(|(m, c)| {
            let (m2, neg) = f(*m);
            (m2, if neg { -c.clone() } else { c.clone() })
        });
        CohClass { n: self.n, v: Multivector::from_terms(2 * self.n, terms) }
    }
}

impl std::fmt::Display for CohClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.v.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .v
            .terms()
            .map(|(m, c)| {
                let idx: Vec<String> = (0..2 * self.n)
                    .filter(|j| m & (1 << j) != 0)
                    .map(|j| format!("e{}", j + 1))
                    .collect();
                let body = if idx.is_empty() { "1".to_string() } else { idx.join("^") };
                format!("{}*{}", format_rational(c), body)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn full(n: usize) -> Mask {
    (1 << (2 * n)) - 1
}

/// `PD(e_I) = ε(I, I^c) e_{I^c}`, with `ε` the sign of the shuffle `I, I^c`.
pub fn poincare_dual(x: &CohClass) -> CohClass {
    let f = full(x.n);
    x.map_terms(|m| (f ^ m, merge_sign(m, f ^ m)))
}

/// `PD ∘ PD = (−1)^ℓ` on degree `ℓ`.
pub fn pd_pd_sign(l: usize) -> Q {
    if l % 2 == 1 {
        -Q::one()
    } else {
        Q::one()
    }
}

/// `d ∘ PD` read as a map `H^{2n−ℓ}(B) → H^ℓ(B̂)`. With `H₁(B) ≅ H¹(B̂)`
/// the identity, it has the same matrix as [`poincare_dual`].
pub fn fourier_d(x: &CohClass) -> CohClass {
    poincare_dual(x)
}

/// Inverse of [`fourier_d`]: `f_J ↦ ε(J^c, J) e_{J^c}`.
pub fn fourier_d_inv(y: &CohClass) -> CohClass {
    let f = full(y.n);
    y.map_terms(|m| (f ^ m, merge_sign(f ^ m, m)))
}

/// `x * y = d⁻¹(d x ∧ d y)`.
pub fn pontryagin(x: &CohClass, y: &CohClass) -> Result<CohClass> {
    Ok(fourier_d_inv(&fourier_d(x).wedge(&fourier_d(y))?))
}

/// `x^{*k}`; the empty product is the point class.
pub fn pontryagin_pow(x: &CohClass, k: usize) -> Result<CohClass> {
    let mut acc = CohClass::point(x.n);
    for _ in 0..k {
        acc = pontryagin(&acc, x)?;
    }
    Ok(acc)
}

/// Matrix of `d` from degree `2n − ℓ` to degree `ℓ` in lexicographic bases.
pub fn fourier_matrix(n: usize, l: usize) -> Vec<Vec<Q>> {
    let src = crate::exterior::subsets_lex(2 * n, 2 * n - l);
    let dst = crate::exterior::subsets_lex(2 * n, l);
    let mut m = vec![vec![Q::zero(); src.len()]; dst.len()];
    for (j, s) in src.iter().enumerate() {
        let img = fourier_d(&CohClass { n, v: Multivector::from_terms(2 * n, [(*s, Q::one())]) });
        for (i, t) in dst.iter().enumerate() {
            m[i][j] = img.v.coefficient(*t);
        }
    }
    m
}

/// Both sides of the Pontryagin power formulas for one `α ∈ H²`.
///
/// With `δ = αⁿ/n!` (a number), part (a) is
/// `(α^{n−1})^{*(n−k)} = (n−k)! (n−1)!^{n−k} δ^{n−k−1} α^k / k!`, and part (b)
/// the same identity for `β = α^{n−1}` with cup and Pontryagin products
/// exchanged and `δ` replaced by `β^{*n}/n!`. For `k = n` the exponent of `δ`
/// is `−1` and both sides are multiplied by `δ`. The `printed_*` fields test
/// the variant without the `1/k!`, which agrees for `k ≤ 1` only.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerFormulaReport {
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "crate::serde_q::scalar")]
    pub degree: Q,
    pub part_a: bool,
    pub part_b: bool,
    pub printed_a: bool,
    pub printed_b: bool,
}

impl PowerFormulaReport {
    pub fn holds(&self) -> bool {
        self.part_a && self.part_b
    }
}

fn power_formula_sides(
    lhs: &CohClass,
    power: &CohClass,
    delta: &Q,
    n: usize,
    k: usize,
) -> (bool, bool) {
    let c = Q::from_integer(factorial((n - k) as u32) * factorial((n - 1) as u32).pow((n - k) as u32));
    let kf = Q::from_integer(factorial(k as u32));
    if k == n {
        // δ^{−1} on the right: clear it
        let l = lhs.scale(delta);
        (l == power.scale(&(c.clone() / kf)), l == power.scale(&c))
    } else {
        let d = num_traits::pow(delta.clone(), n - k - 1);
        let r = power.scale(&(c * d));
        (*lhs == r.scale(&(Q::one() / kf)), *lhs == r)
    }
}

pub fn check_prodform(n: usize, k: usize, alpha: &CohClass) -> Result<PowerFormulaReport> {
    if n != alpha.n || k > n {
        return Err(Error::InvalidArgument(format!("need 0 <= k <= n = {}, got n = {n}, k = {k}", alpha.n)));
    }
    if !alpha.is_zero() && alpha.degree() != Some(2) {
        return Err(Error::DegreeMismatch { expected: "2".into(), found: format!("{:?}", alpha.degree()) });
    }
    let nf = Q::from_integer(factorial(n as u32));
    let delta = alpha.pow(n).top_value() / nf.clone();
    let beta = alpha.pow(n - 1);
    let lhs_a = pontryagin_pow(&beta, n - k)?;
    let (part_a, printed_a) = power_formula_sides(&lhs_a, &alpha.pow(k), &delta, n, k);

    let delta_b = pontryagin_pow(&beta, n)?.constant() / nf;
    let lhs_b = pontryagin_pow(&beta, n - 1)?.pow(n - k);
    let (part_b, printed_b) = power_formula_sides(&lhs_b, &pontryagin_pow(&beta, k)?, &delta_b, n, k);

    Ok(PowerFormulaReport { n, k, degree: delta, part_a, part_b, printed_a, printed_b })
}

/// The real class of `iℓ∧ℓ̄ = 2 Re ℓ ∧ Im ℓ` for `ℓ = Σ c_j dz_j`.
pub fn rank_one_real(n: usize, ell: &[Complex<Q>]) -> Result<CohClass> {
    if ell.len() != n {
        return Err(Error::DimensionMismatch { left: ell.len(), right: n });
    }
    let mut u = Multivector::zero(2 * n);
    let mut v = Multivector::zero(2 * n);
    for (j, c) in ell.iter().enumerate() {
        // (a + ib)(dx + i dy) = (a dx − b dy) + i(b dx + a dy)
        u = &u + &Multivector::from_terms(2 * n, [(1 << (2 * j), c.re.clone()), (1 << (2 * j + 1), -c.im.clone())]);
        v = &v + &Multivector::from_terms(2 * n, [(1 << (2 * j), c.im.clone()), (1 << (2 * j + 1), c.re.clone())]);
    }
    let two = Q::from_integer(2.into());
    Ok(CohClass { n, v: u.wedge(&v)?.scale(&two) })
}

fn herm(a: &[Complex<Q>], b: &[Complex<Q>]) -> Complex<Q> {
    a.iter().zip(b).fold(Complex::zero(), |acc, (x, y)| acc + x.clone() * y.conj())
}

/// An orthogonal basis, for the standard Hermitian product, of the
/// complement of `ell` (exact Gram–Schmidt, no normalization).
pub fn hermitian_complement(ell: &[Complex<Q>]) -> Vec<Vec<Complex<Q>>> {
    let n = ell.len();
    let mut basis: Vec<Vec<Complex<Q>>> = vec![ell.to_vec()];
    for j in 0..n {
        let mut w: Vec<Complex<Q>> =
            (0..n).map(|k| if k == j { Complex::one() } else { Complex::zero() }).collect();
        for b in &basis {
            let c = herm(&w, b) / herm(b, b);
            for (wk, bk) in w.iter_mut().zip(b) {
                *wk = wk.clone() - c.clone() * bk.clone();
            }
        }
        if w.iter().any(|c| !c.is_zero()) {
            basis.push(w);
        }
        if basis.len() == n {
            break;
        }
    }
    basis.split_off(1)
}

/// `d(iℓ∧ℓ̄)` against the product of the rank-one forms on the Hermitian
/// complement of `ℓ`: the two must be positively proportional, so the image
/// of a strongly positive divisor is strongly positive of dimension one.
pub fn strong_preservation(n: usize, ell: &[Complex<Q>]) -> Result<bool> {
    if ell.iter().all(Zero::is_zero) {
        return Err(Error::AllZero);
    }
    let image = fourier_d(&rank_one_real(n, ell)?);
    let mut prod = CohClass::one(n);
    for w in hermitian_complement(ell) {
        prod = prod.wedge(&rank_one_real(n, &w)?)?;
    }
    let Some((m, c)) = prod.v.terms().next() else {
        return Ok(false);
    };
    let ratio = image.v.coefficient(*m) / c.clone();
    Ok(ratio.is_positive() && image == prod.scale(&ratio))
}

//! Exact exterior algebra of complex differential forms on `V = C^dim`.
//!
//! A monomial is `dz_I ∧ dz̄_J` with `I` and `J` stored as bitmasks over the
//! coordinates `0..dim`; the holomorphic factors always come first, each block
//! in increasing index order. Terms entered in any other order are normalized
//! with the sign of the sorting permutation, so equality of forms is equality
//! of their sparse coefficient maps.
//!
//! The orientation form `ω₀` is `∏_j (i dz_j ∧ dz̄_j)`; [`Form::top_scalar`]
//! returns the rational `c` with `f = c·ω₀`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use itertools::Itertools;
use num_complex::Complex;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{complex_is_negligible, i_pow, imag_unit, Scalar};

/// Bitmask of coordinate indices, bit `j` for `dz_j`.
pub type Mask = u32;

/// Largest supported complex dimension.
pub const MAX_DIM: usize = 16;

/// Sign of the permutation sorting the concatenation of two disjoint sorted
/// index sets `a` then `b`: `(-1)^{#{(x, y) ∈ a × b : x > y}}`.
pub fn merge_sign(a: Mask, b: Mask) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> (y + 1)).count_ones();
    }
    inversions % 2 == 1
}

/// Sort a list of indices, returning the mask and whether the sort was odd.
/// `None` if an index repeats.
pub fn sort_indices(indices: &[usize]) -> Option<(Mask, bool)> {
    let mut mask: Mask = 0;
    let mut odd = false;
    for &i in indices {
        let bit = 1 << i;
        if mask & bit != 0 {
            return None;
        }
        // every already-placed index larger than i is an inversion
        odd ^= (mask >> (i + 1)).count_ones() % 2 == 1;
        mask |= bit;
    }
    Some((mask, odd))
}

pub fn mask_indices(mask: Mask) -> Vec<usize> {
    (0..32).filter(|j| mask & (1 << j) != 0).collect()
}

pub fn indices_mask(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

/// All `k`-subsets of `0..n` as masks, in lexicographic order of their sorted
/// index lists: `(0,1), (0,2), …, (n-2,n-1)`.
pub fn subsets_lex(n: usize, k: usize) -> Vec<Mask> {
    (0..n).combinations(k).map(|c| indices_mask(&c)).collect()
}

/// Index of a monomial `dz_I ∧ dz̄_J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    pub holo: Mask,
    pub anti: Mask,
}

impl MultiIndex {
    pub fn new(holo: Mask, anti: Mask) -> Self {
        MultiIndex { holo, anti }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.holo.count_ones() as usize, self.anti.count_ones() as usize)
    }

    pub fn degree(&self) -> usize {
        let (p, q) = self.bidegree();
        p + q
    }
}

/// A complex differential form with coefficients in `Complex<T>`.
#[derive(Clone, PartialEq, Debug)]
pub struct Form<T: Scalar> {
    dim: usize,
    terms: BTreeMap<MultiIndex, Complex<T>>,
}

impl<T: Scalar> Form<T> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Form { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Complex::one())
    }

    pub fn constant(dim: usize, c: Complex<T>) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(MultiIndex::new(0, 0), c);
        f
    }

    /// `c · dz_{holo} ∧ dz̄_{anti}` with indices in any order (0-based).
    pub fn monomial(dim: usize, holo: &[usize], anti: &[usize], c: Complex<T>) -> Self {
        let mut f = Self::zero(dim);
        assert!(holo.iter().chain(anti).all(|&i| i < dim), "index out of range");
        if let (Some((h, odd_h)), Some((a, odd_a))) = (sort_indices(holo), sort_indices(anti)) {
            let c = if odd_h ^ odd_a { -c } else { c };
            f.add_term(MultiIndex::new(h, a), c);
        }
        f
    }

    /// The holomorphic 1-form `Σ c_j dz_j`.
    pub fn covector(coeffs: &[Complex<T>]) -> Self {
        let mut f = Self::zero(coeffs.len());
        for (j, c) in coeffs.iter().enumerate() {
            f.add_term(MultiIndex::new(1 << j, 0), c.clone());
        }
        f
    }

    /// `i·dz_a ∧ dz̄_b`.
    pub fn i_dz_dzbar(dim: usize, a: usize, b: usize) -> Self {
        Self::monomial(dim, &[a], &[b], imag_unit())
    }

    /// The rank-one positive (1,1)-form `i ℓ ∧ ℓ̄` for a holomorphic 1-form `ℓ`.
    pub fn positive_11(ell: &Form<T>) -> Self {
        let w = ell.wedge(&ell.conj()).expect("same dimension");
        w.scale(&imag_unit())
    }

    /// The orientation form `(i dz_1∧dz̄_1)∧…∧(i dz_n∧dz̄_n)`.
    pub fn omega0(dim: usize) -> Self {
        let full: Mask = if dim == 0 { 0 } else { (1 << dim) - 1 };
        let mut f = Self::zero(dim);
        f.add_term(MultiIndex::new(full, full), Self::omega0_coefficient(dim));
        f
    }

    /// Coefficient of `dz_{1..n} ∧ dz̄_{1..n}` in `ω₀`: `i^n (-1)^{n(n-1)/2}`.
    fn omega0_coefficient(dim: usize) -> Complex<T> {
        let n = dim as i64;
        let c = i_pow::<T>(n);
        if (n * (n - 1) / 2) % 2 == 1 {
            -c
        } else {
            c
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex<T>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: MultiIndex) -> Complex<T> {
        self.terms.get(&idx).cloned().unwrap_or_else(Complex::zero)
    }

    fn add_term(&mut self, idx: MultiIndex, c: Complex<T>) {
        if complex_is_negligible(&c) {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(Complex::zero);
        *entry = entry.clone() + c;
        if complex_is_negligible(entry) {
            self.terms.remove(&idx);
        }
    }

    fn check_dim(&self, other: &Form<T>) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Form<T>) -> Result<Form<T>> {
        self.check_dim(other)?;
        let mut out = Form::zero(self.dim);
        for (l, a) in &self.terms {
            for (r, b) in &other.terms {
                if l.holo & r.holo != 0 || l.anti & r.anti != 0 {
                    continue;
                }
                // move dz_K past dz̄_J, then merge each block
                let cross = (l.anti.count_ones() * r.holo.count_ones()) % 2 == 1;
                let odd = cross ^ merge_sign(l.holo, r.holo) ^ merge_sign(l.anti, r.anti);
                let c = a.clone() * b.clone();
                out.add_term(
                    MultiIndex::new(l.holo | r.holo, l.anti | r.anti),
                    if odd { -c } else { c },
                );
            }
        }
        Ok(out)
    }

    /// `self ∧ self ∧ … ∧ self` (`k` factors); `k = 0` gives `1`.
    pub fn pow(&self, k: usize) -> Form<T> {
        let mut acc = Form::one(self.dim);
        for _ in 0..k {
            acc = acc.wedge(self).expect("same dimension");
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Complex<T>) -> Form<T> {
        let mut out = Form::zero(self.dim);
        for (idx, a) in &self.terms {
            out.add_term(*idx, a.clone() * c.clone());
        }
        out
    }

    pub fn scale_real(&self, c: &T) -> Form<T> {
        self.scale(&Complex::new(c.clone(), T::zero()))
    }

    /// Complex conjugate: `conj(c dz_I∧dz̄_J) = c̄ (-1)^{|I||J|} dz_J∧dz̄_I`.
    pub fn conj(&self) -> Form<T> {
        let mut out = Form::zero(self.dim);
        for (idx, c) in &self.terms {
            let odd = (idx.holo.count_ones() * idx.anti.count_ones()) % 2 == 1;
            let c = c.conj();
            out.add_term(MultiIndex::new(idx.anti, idx.holo), if odd { -c } else { c });
        }
        out
    }

    /// The `(p, q)` component.
    pub fn component(&self, p: usize, q: usize) -> Form<T> {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(idx, _)| idx.bidegree() == (p, q))
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self, p: usize, q: usize) -> bool {
        self.terms.keys().all(|idx| idx.bidegree() == (p, q))
    }

    /// Total degree if all terms share one, `None` for mixed or zero forms.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(MultiIndex::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Real `(k, k)`-form: supported in bidegree `(k, k)` and fixed by conjugation.
    pub fn is_real_kk(&self, k: usize) -> bool {
        self.is_homogeneous(k, k) && self.conj() == *self
    }

    /// The coefficient `c ∈ C` with `self = c·ω₀`.
    pub fn top_coefficient(&self) -> Result<Complex<T>> {
        if !self.is_homogeneous(self.dim, self.dim) {
            return Err(Error::DegreeMismatch {
                expected: format!("({0},{0})", self.dim),
                found: self.describe_degree(),
            });
        }
        let full: Mask = if self.dim == 0 { 0 } else { (1 << self.dim) - 1 };
        let c = self.coefficient(MultiIndex::new(full, full));
        Ok(c / Self::omega0_coefficient(self.dim))
    }

    /// The real scalar `c` with `self = c·ω₀`.
    pub fn top_scalar(&self) -> Result<T> {
        let c = self.top_coefficient()?;
        if !c.im.is_negligible() {
            return Err(Error::NotReal);
        }
        Ok(c.re)
    }

    fn describe_degree(&self) -> String {
        let degrees: Vec<String> = self
            .terms
            .keys()
            .map(MultiIndex::bidegree)
            .unique()
            .map(|(p, q)| format!("({p},{q})"))
            .collect();
        if degrees.is_empty() {
            "zero".to_string()
        } else {
            degrees.join("+")
        }
    }

    /// Evaluate the coefficients in another scalar type.
    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Form<U> {
        let mut out = Form::zero(self.dim);
        for (idx, c) in &self.terms {
            out.add_term(*idx, Complex::new(f(&c.re), f(&c.im)));
        }
        out
    }
}

impl<T: Scalar> Add for &Form<T> {
    type Output = Form<T>;

    fn add(self, rhs: &Form<T>) -> Form<T> {
        assert_eq!(self.dim, rhs.dim, "adding forms of different dimension");
        let mut out = self.clone();
        for (idx, c) in &rhs.terms {
            out.add_term(*idx, c.clone());
        }
        out
    }
}

impl<T: Scalar> Add for Form<T> {
    type Output = Form<T>;

    fn add(self, rhs: Form<T>) -> Form<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Neg for &Form<T> {
    type Output = Form<T>;

    fn neg(self) -> Form<T> {
        self.scale_real(&-T::one())
    }
}

impl<T: Scalar> Sub for &Form<T> {
    type Output = Form<T>;

    fn sub(self, rhs: &Form<T>) -> Form<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Sub for Form<T> {
    type Output = Form<T>;

    fn sub(self, rhs: Form<T>) -> Form<T> {
        &self - &rhs
    }
}

impl<T: Scalar> fmt::Display for Form<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts = self.terms.iter().map(|(idx, c)| {
            let mut factors: Vec<String> =
                mask_indices(idx.holo).iter().map(|j| format!("dz{}", j + 1)).collect();
            factors.extend(mask_indices(idx.anti).iter().map(|j| format!("dzb{}", j + 1)));
            if factors.is_empty() {
                format!("({c})")
            } else {
                format!("({c})·{}", factors.join("∧"))
            }
        });
        write!(f, "{}", parts.format(" + "))
    }
}

/// An element of the exterior algebra `∧•(C^dim)` on generators `e_0..e_{dim-1}`
/// with coefficients in an arbitrary commutative ring `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector<C> {
    dim: usize,
    terms: BTreeMap<Mask, C>,
}

impl<C> Multivector<C>
where
    C: Clone + Num + Neg<Output = C> + PartialEq,
{
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 2 * MAX_DIM, "dimension {dim} too large");
        Multivector { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::blade(dim, &[], C::one())
    }

    /// `c · e_{i_1} ∧ … ∧ e_{i_k}` with indices in any order.
    pub fn blade(dim: usize, indices: &[usize], c: C) -> Self {
        let mut v = Self::zero(dim);
        assert!(indices.iter().all(|&i| i < dim), "index out of range");
        if let Some((mask, odd)) = sort_indices(indices) {
            v.add_term(mask, if odd { -c } else { c });
        }
        v
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Mask, C)>) -> Self {
        let mut v = Self::zero(dim);
        for (m, c) in terms {
            v.add_term(m, c);
        }
        v
    }

    /// Top monomial `e_0 ∧ … ∧ e_{dim-1}`.
    pub fn top(dim: usize) -> Self {
        let full: Mask = if dim == 0 { 0 } else { (1 << dim) - 1 };
        Self::from_terms(dim, [(full, C::one())])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mask, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mask: Mask) -> C {
        self.terms.get(&mask).cloned().unwrap_or_else(C::zero)
    }

    pub(crate) fn add_term(&mut self, mask: Mask, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut out = Self::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = x.clone() * y.clone();
                out.add_term(a | b, if merge_sign(*a, *b) { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..k {
            acc = acc.wedge(self).expect("same dimension");
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(m, x)| (*m, x.clone() * c.clone())))
    }

    /// Homogeneous grade-`k` part.
    pub fn grade(&self, k: usize) -> Self {
        Self::from_terms(
            self.dim,
            self.terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == k)
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    /// Grade if homogeneous; `None` for zero or mixed elements.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn map<D>(&self, f: impl Fn(&C) -> D) -> Multivector<D>
    where
        D: Clone + Num + Neg<Output = D> + PartialEq,
    {
        Multivector::from_terms(self.dim, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl<C> Add for &Multivector<C>
where
    C: Clone + Num + Neg<Output = C> + PartialEq,
{
    type Output = Multivector<C>;

    fn add(self, rhs: &Multivector<C>) -> Multivector<C> {
        assert_eq!(self.dim, rhs.dim, "adding multivectors of different dimension");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<C> Sub for &Multivector<C>
where
    C: Clone + Num + Neg<Output = C> + PartialEq,
{
    type Output = Multivector<C>;

    fn sub(self, rhs: &Multivector<C>) -> Multivector<C> {
        self + &rhs.scale(&-C::one())
    }
}

/// `∏_j i ℓ_j ∧ ℓ̄_j` for holomorphic 1-forms `ℓ_j`, which equals
/// `i^{m²}·(ℓ_1∧…∧ℓ_m) ∧ conj(ℓ_1∧…∧ℓ_m)`.
pub fn strongly_positive_product<T: Scalar>(ells: &[Form<T>], dim: usize) -> Result<Form<T>> {
    let mut acc = Form::one(dim);
    for ell in ells {
        acc = acc.wedge(&Form::positive_11(ell))?;
    }
    Ok(acc)
}

//! The canonical subring generated by `θ₁ = p₁*θ`, `θ₂ = p₂*θ` and
//! `λ = c₁(P)` in the cohomology of `A × A`, for a principally polarized
//! abelian variety `A` of dimension `g`.
//!
//! Classes are stored as coefficient vectors over a fixed basis per degree.
//! The basis in degree `r < 2g` is the greedy independent subset of the
//! monomials `θ₁^i θ₂^j λ^k`, scanned by increasing `λ`-exponent and then
//! decreasing `θ₁`-exponent (for `g = 2, r = 2` this is
//! `θ₁², θ₁θ₂, θ₂², θ₁λ, θ₂λ, λ²`). In degree `2g` the basis is the single
//! class `ω` with `top_scalar(ω) = 1`, so top-degree coefficients read as
//! intersection numbers.
//!
//! All structure is computed from the explicit coordinate forms of the three
//! generators (see [`canonical_form`]); nothing about the ring is hard-coded.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{Form, MultiIndex};
use crate::scalar::{i_pow, Scalar};

type Q = BigRational;

/// Largest `g` the ring is built for.
pub const MAX_GENUS: usize = 4;

/// One of the three degree-one generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    Theta1,
    Theta2,
    Lambda,
}

/// The coordinate expression of a generator on `V = C^g ⊕ C^g`:
/// `θ₁ = Σ_{j≤g} i dz_j∧dz̄_j`, `θ₂ = Σ_{j>g} i dz_j∧dz̄_j`,
/// `λ = Σ_{j≤g} (i dz_j∧dz̄_{g+j} + i dz_{g+j}∧dz̄_j)`.
pub fn canonical_form<T: Scalar>(g: usize, which: Generator) -> Form<T> {
    let dim = 2 * g;
    let mut f = Form::zero(dim);
    for j in 0..g {
        let term = match which {
            Generator::Theta1 => Form::i_dz_dzbar(dim, j, j),
            Generator::Theta2 => Form::i_dz_dzbar(dim, g + j, g + j),
            Generator::Lambda => {
                &Form::i_dz_dzbar(dim, j, g + j) + &Form::i_dz_dzbar(dim, g + j, j)
            }
        };
        f = &f + &term;
    }
    f
}

/// `θ₁^t1 θ₂^t2 λ^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub t1: u32,
    pub t2: u32,
    pub l: u32,
}

impl Monomial {
    pub const fn new(t1: u32, t2: u32, l: u32) -> Self {
        Monomial { t1, t2, l }
    }

    pub fn degree(&self) -> usize {
        (self.t1 + self.t2 + self.l) as usize
    }

    /// Scan order for basis selection.
    fn scan_key(&self) -> (u32, std::cmp::Reverse<u32>) {
        (self.l, std::cmp::Reverse(self.t1))
    }

    /// All monomials of degree `r` in scan order.
    pub fn all_of_degree(r: usize) -> Vec<Monomial> {
        let r = r as u32;
        let mut out: Vec<Monomial> = (0..=r)
            .flat_map(|l| (0..=r - l).map(move |t1| Monomial::new(t1, r - l - t1, l)))
            .collect();
        out.sort_by_key(Monomial::scan_key);
        out
    }

    /// Key string `t1^i*t2^j*l^k`, omitting zero exponents and `^1`; `"1"` for
    /// the unit.
    pub fn key(&self) -> String {
        let mut parts = Vec::new();
        for (name, e) in [("t1", self.t1), ("t2", self.t2), ("l", self.l)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Parse a key produced by [`Monomial::key`] or any permutation of its
    /// factors (`l*t1`, `t1^1*t2^0`, …). Repeated factors are rejected.
    pub fn parse_key(s: &str) -> Option<Monomial> {
        let s = s.trim();
        if s == "1" {
            return Some(Monomial::new(0, 0, 0));
        }
        let mut exps: [Option<u32>; 3] = [None; 3];
        for factor in s.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    if e.is_empty() || !e.bytes().all(|b| b.is_ascii_digit()) {
                        return None;
                    }
                    (n, e.parse::<u32>().ok()?)
                }
                None => (factor, 1),
            };
            let slot = match name {
                "t1" => 0,
                "t2" => 1,
                "l" => 2,
                _ => return None,
            };
            if exps[slot].replace(exp).is_some() {
                return None;
            }
        }
        Some(Monomial::new(
            exps[0].unwrap_or(0),
            exps[1].unwrap_or(0),
            exps[2].unwrap_or(0),
        ))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// A basis vector of `N^r_can`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisElement {
    Monomial(Monomial),
    /// The top-degree class with `top_scalar = 1`.
    Top,
}

impl BasisElement {
    pub fn key(&self) -> String {
        match self {
            BasisElement::Monomial(m) => m.key(),
            BasisElement::Top => "omega".to_string(),
        }
    }
}

/// An element of `N^degree_can(A × A)` in the ring's basis for that degree.
/// Degrees above `2g` have an empty basis and every class there is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalClass<T: Scalar> {
    g: usize,
    degree: usize,
    coeffs: Vec<T>,
}

impl<T: Scalar> CanonicalClass<T> {
    /// Class with the given coordinates. The caller is responsible for the
    /// coordinate vector having the basis length for `(g, degree)`; use
    /// [`CanonicalRing::class`] for a checked constructor.
    pub fn from_coords(g: usize, degree: usize, coeffs: Vec<T>) -> Self {
        CanonicalClass { g, degree, coeffs }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `true` for the zero class of a degree above `2g`.
    pub fn is_beyond_top(&self) -> bool {
        self.degree > 2 * self.g
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible())
    }

    /// The scalar of a top-degree class.
    pub fn top_value(&self) -> Option<T> {
        if self.degree == 2 * self.g {
            self.coeffs.first().cloned()
        } else if self.is_beyond_top() {
            Some(T::zero())
        } else {
            None
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.g != other.g {
            return Err(Error::DimensionMismatch { left: self.g, right: other.g });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree.to_string(),
                found: other.degree.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone());
        Ok(Self::from_coords(self.g, self.degree, coeffs.collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, c: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        Self::from_coords(self.g, self.degree, coeffs)
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> CanonicalClass<U> {
        CanonicalClass::from_coords(self.g, self.degree, self.coeffs.iter().map(f).collect())
    }
}

/// `θ_{a,b} = a²θ₁ + b²θ₂ + abλ`, the image of `θ₁` under `[[a, b], [·, ·]]`.
pub fn theta_ab<T: Scalar>(g: usize, a: &T, b: &T) -> CanonicalClass<T> {
    CanonicalClass::from_coords(
        g,
        1,
        vec![a.clone() * a.clone(), b.clone() * b.clone(), a.clone() * b.clone()],
    )
}

/// A real 2×2 matrix `[[a, b], [c, d]]` acting through `u_M(x, y) = (ax + by, cx + dy)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl2Matrix<T: Scalar> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> Gl2Matrix<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Gl2Matrix { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        Self::new(
            a.clone() * o.a.clone() + b.clone() * o.c.clone(),
            a.clone() * o.b.clone() + b.clone() * o.d.clone(),
            c.clone() * o.a.clone() + d.clone() * o.c.clone(),
            c.clone() * o.b.clone() + d.clone() * o.d.clone(),
        )
    }

    /// Images of `(θ₁, θ₂, λ)` under `u_M^*`, as coordinate triples: the
    /// columns of `[[a², c², 2ac], [b², d², 2bd], [ab, cd, ad+bc]]`.
    pub fn degree_one_images(&self) -> [[T; 3]; 3] {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let two = T::from_int(2);
        [
            [a.clone() * a.clone(), b.clone() * b.clone(), a.clone() * b.clone()],
            [c.clone() * c.clone(), d.clone() * d.clone(), c.clone() * d.clone()],
            [
                two.clone() * a.clone() * c.clone(),
                two * b.clone() * d.clone(),
                a.clone() * d.clone() + b.clone() * c.clone(),
            ],
        ]
    }
}

/// Basis data for one degree.
#[derive(Debug)]
pub struct DegreeBasis {
    degree: usize,
    elements: Vec<BasisElement>,
    forms: Vec<Form<Q>>,
    /// A monomial expression for each element (`Top` is a rational multiple of
    /// `θ₁^g θ₂^g`).
    monomial_expr: Vec<(Q, Monomial)>,
    pivots: Vec<MultiIndex>,
    /// Inverse of `[forms[j][pivots[i]] / i^r]`.
    inverse: Vec<Vec<Q>>,
}

impl DegreeBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// The canonical ring for a fixed `g`, with lazily built bases per degree.
pub struct CanonicalRing {
    g: usize,
    generators: [Form<Q>; 3],
    bases: Vec<OnceLock<Arc<DegreeBasis>>>,
    monomial_forms: Mutex<HashMap<Monomial, Arc<Form<Q>>>>,
    tables: Mutex<HashMap<(usize, usize), Arc<Vec<Vec<Vec<Q>>>>>>,
}

impl fmt::Debug for CanonicalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CanonicalRing").field("g", &self.g).finish()
    }
}

impl CanonicalRing {
    pub fn new(g: usize) -> Result<Self> {
        if !(1..=MAX_GENUS).contains(&g) {
            return Err(Error::UnsupportedGenus { g, min: 1, max: MAX_GENUS });
        }
        Ok(CanonicalRing {
            g,
            generators: [
                canonical_form(g, Generator::Theta1),
                canonical_form(g, Generator::Theta2),
                canonical_form(g, Generator::Lambda),
            ],
            bases: (0..=2 * g).map(|_| OnceLock::new()).collect(),
            monomial_forms: Mutex::new(HashMap::new()),
            tables: Mutex::new(HashMap::new()),
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn generator_form(&self, which: Generator) -> &Form<Q> {
        match which {
            Generator::Theta1 => &self.generators[0],
            Generator::Theta2 => &self.generators[1],
            Generator::Lambda => &self.generators[2],
        }
    }

    /// Exact form of a monomial, memoized.
    pub fn monomial_form(&self, m: Monomial) -> Arc<Form<Q>> {
        if let Some(f) = self.monomial_forms.lock().unwrap().get(&m) {
            return f.clone();
        }
        let dim = 2 * self.g;
        let f = if m.degree() == 0 {
            Form::one(dim)
        } else if m.degree() > 2 * self.g {
            Form::zero(dim)
        } else {
            // peel one factor off and recurse
            let (rest, factor) = if m.l > 0 {
                (Monomial::new(m.t1, m.t2, m.l - 1), Generator::Lambda)
            } else if m.t2 > 0 {
                (Monomial::new(m.t1, m.t2 - 1, m.l), Generator::Theta2)
            } else {
                (Monomial::new(m.t1 - 1, m.t2, m.l), Generator::Theta1)
            };
            let rest = self.monomial_form(rest);
            rest.wedge(self.generator_form(factor)).expect("same dimension")
        };
        let f = Arc::new(f);
        self.monomial_forms.lock().unwrap().insert(m, f.clone());
        f
    }

    /// Basis data for degree `r ≤ 2g`.
    pub fn basis(&self, r: usize) -> Result<Arc<DegreeBasis>> {
        let slot = self.bases.get(r).ok_or_else(|| Error::DegreeMismatch {
            expected: format!("at most {}", 2 * self.g),
            found: r.to_string(),
        })?;
        Ok(slot.get_or_init(|| Arc::new(self.build_basis(r))).clone())
    }

    pub fn dim(&self, r: usize) -> usize {
        if r > 2 * self.g {
            0
        } else {
            self.basis(r).expect("degree in range").dim()
        }
    }

    fn build_basis(&self, r: usize) -> DegreeBasis {
        let top = 2 * self.g;
        let unit = i_pow::<Q>(r as i64);
        // real coordinate vector of a (r, r)-form: coefficient / i^r
        let real_coords = |f: &Form<Q>| -> BTreeMap<MultiIndex, Q> {
            f.terms().map(|(idx, c)| (*idx, (c.clone() / unit.clone()).re)).collect()
        };

        let mut elements = Vec::new();
        let mut forms = Vec::new();
        let mut monomial_expr = Vec::new();
        let mut echelon: Vec<(MultiIndex, BTreeMap<MultiIndex, Q>)> = Vec::new();

        let candidates: Vec<(BasisElement, Form<Q>, (Q, Monomial))> = if r == top {
            let m = Monomial::new(self.g as u32, self.g as u32, 0);
            let value = self.monomial_form(m).top_scalar().expect("top degree");
            vec![(
                BasisElement::Top,
                Form::omega0(top),
                (Q::one() / value, m),
            )]
        } else {
            Monomial::all_of_degree(r)
                .into_iter()
                .map(|m| {
                    (BasisElement::Monomial(m), (*self.monomial_form(m)).clone(), (Q::one(), m))
                })
                .collect()
        };

        for (element, form, expr) in candidates {
            let mut v = real_coords(&form);
            for (pivot, e) in &echelon {
                if let Some(c) = v.get(pivot).cloned() {
                    for (k, x) in e {
                        let entry = v.entry(*k).or_insert_with(Q::zero);
                        *entry -= c.clone() * x;
                        if entry.is_zero() {
                            v.remove(k);
                        }
                    }
                }
            }
            let Some((&pivot, lead)) = v.iter().next() else {
                continue;
            };
            let lead = lead.clone();
            for x in v.values_mut() {
                *x /= lead.clone();
            }
            echelon.push((pivot, v));
            elements.push(element);
            forms.push(form);
            monomial_expr.push(expr);
        }

        let pivots: Vec<MultiIndex> = echelon.iter().map(|(p, _)| *p).collect();
        let matrix: Vec<Vec<Q>> = pivots
            .iter()
            .map(|p| forms.iter().map(|f| (f.coefficient(*p) / unit.clone()).re).collect())
            .collect();
        let inverse = invert(&matrix).expect("pivot submatrix is triangular up to scaling");
        DegreeBasis { degree: r, elements, forms, monomial_expr, pivots, inverse }
    }

    /// Checked constructor from coordinates.
    pub fn class<T: Scalar>(&self, degree: usize, coeffs: Vec<T>) -> Result<CanonicalClass<T>> {
        let expected = self.dim(degree);
        if coeffs.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "degree {degree} needs {expected} coordinates, got {}",
                coeffs.len()
            )));
        }
        Ok(CanonicalClass::from_coords(self.g, degree, coeffs))
    }

    pub fn zero<T: Scalar>(&self, degree: usize) -> CanonicalClass<T> {
        CanonicalClass::from_coords(self.g, degree, vec![T::zero(); self.dim(degree)])
    }

    pub fn one<T: Scalar>(&self) -> CanonicalClass<T> {
        CanonicalClass::from_coords(self.g, 0, vec![T::one()])
    }

    /// The top class with the given intersection number.
    pub fn top<T: Scalar>(&self, value: T) -> CanonicalClass<T> {
        CanonicalClass::from_coords(self.g, 2 * self.g, vec![value])
    }

    pub fn generator<T: Scalar>(&self, which: Generator) -> CanonicalClass<T> {
        let mut coeffs = vec![T::zero(); 3];
        coeffs[which as usize] = T::one();
        CanonicalClass::from_coords(self.g, 1, coeffs)
    }

    pub fn monomial<T: Scalar>(&self, m: Monomial) -> CanonicalClass<T> {
        if m.degree() > 2 * self.g {
            return self.zero(m.degree());
        }
        self.extract(&self.monomial_form(m).map_scalar(T::from_rational), m.degree())
            .expect("monomials lie in the canonical ring")
    }

    /// `Σ c_m · m` over arbitrary monomials of one degree.
    pub fn from_monomials<T: Scalar>(
        &self,
        degree: usize,
        terms: &[(Monomial, T)],
    ) -> Result<CanonicalClass<T>> {
        let mut acc = self.zero(degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree.to_string(),
                    found: m.degree().to_string(),
                });
            }
            acc = acc.add(&self.monomial::<T>(*m).scale(c))?;
        }
        Ok(acc)
    }

    /// `μ = 4θ₁θ₂ − λ²`.
    pub fn mu<T: Scalar>(&self) -> CanonicalClass<T> {
        self.mu_t(&-T::one())
    }

    /// `μ_t = 4θ₁θ₂ + tλ²`.
    pub fn mu_t<T: Scalar>(&self, t: &T) -> CanonicalClass<T> {
        self.from_monomials(
            2,
            &[(Monomial::new(1, 1, 0), T::from_int(4)), (Monomial::new(0, 0, 2), t.clone())],
        )
        .expect("degree 2 exists for g >= 1")
    }

    /// The coordinate form of a class.
    pub fn to_form<T: Scalar>(&self, x: &CanonicalClass<T>) -> Result<Form<T>> {
        self.check_class(x)?;
        if x.is_beyond_top() {
            return Ok(Form::zero(2 * self.g));
        }
        let basis = self.basis(x.degree)?;
        let mut f = Form::zero(2 * self.g);
        for (c, bf) in x.coeffs.iter().zip(&basis.forms) {
            if c.is_negligible() {
                continue;
            }
            f = &f + &bf.map_scalar(T::from_rational).scale_real(c);
        }
        Ok(f)
    }

    /// Coordinates of a form of degree `(r, r)` in the basis; fails if the form
    /// is not a canonical class.
    pub fn extract<T: Scalar>(&self, f: &Form<T>, r: usize) -> Result<CanonicalClass<T>> {
        if f.dim() != 2 * self.g {
            return Err(Error::DimensionMismatch { left: f.dim(), right: 2 * self.g });
        }
        if r > 2 * self.g {
            return if f.is_zero() { Ok(self.zero(r)) } else { Err(Error::NotInSpan) };
        }
        if !f.is_homogeneous(r, r) {
            return Err(Error::NotInSpan);
        }
        let basis = self.basis(r)?;
        let unit: Complex<T> = i_pow(r as i64);
        let mut values = Vec::with_capacity(basis.pivots.len());
        for p in &basis.pivots {
            let v = f.coefficient(*p) / unit.clone();
            if !v.im.is_negligible() {
                return Err(Error::NotInSpan);
            }
            values.push(v.re);
        }
        let coeffs: Vec<T> = basis
            .inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&values)
                    .fold(T::zero(), |acc, (m, v)| acc + T::from_rational(m) * v.clone())
            })
            .collect();
        let class = CanonicalClass::from_coords(self.g, r, coeffs);
        if !(&self.to_form(&class)? - f).is_empty() {
            return Err(Error::NotInSpan);
        }
        Ok(class)
    }

    fn check_class<T: Scalar>(&self, x: &CanonicalClass<T>) -> Result<()> {
        if x.g != self.g {
            return Err(Error::DimensionMismatch { left: x.g, right: self.g });
        }
        if x.coeffs.len() != self.dim(x.degree) {
            return Err(Error::InvalidArgument(format!(
                "class of degree {} has {} coordinates, basis has {}",
                x.degree,
                x.coeffs.len(),
                self.dim(x.degree)
            )));
        }
        Ok(())
    }

    /// Structure constants `e_i · e_j = Σ_k table[i][j][k] e_k`, computed by
    /// wedging basis forms and re-extracting.
    fn table(&self, r: usize, s: usize) -> Arc<Vec<Vec<Vec<Q>>>> {
        let key = (r.min(s), r.max(s));
        if let Some(t) = self.tables.lock().unwrap().get(&key) {
            return t.clone();
        }
        let (br, bs) = (self.basis(key.0).unwrap(), self.basis(key.1).unwrap());
        let table: Vec<Vec<Vec<Q>>> = br
            .forms
            .iter()
            .map(|fi| {
                bs.forms
                    .iter()
                    .map(|fj| {
                        let w = fi.wedge(fj).expect("same dimension");
                        self.extract(&w, key.0 + key.1).expect("ring is closed").coeffs
                    })
                    .collect()
            })
            .collect();
        let table = Arc::new(table);
        self.tables.lock().unwrap().insert(key, table.clone());
        table
    }

    /// Product in the ring. Above degree `2g` the product is the zero class of
    /// that degree ([`CanonicalClass::is_beyond_top`]).
    pub fn mul<T: Scalar>(
        &self,
        x: &CanonicalClass<T>,
        y: &CanonicalClass<T>,
    ) -> Result<CanonicalClass<T>> {
        self.check_class(x)?;
        self.check_class(y)?;
        let degree = x.degree + y.degree;
        if degree > 2 * self.g {
            return Ok(self.zero(degree));
        }
        let (lo, hi) = if x.degree <= y.degree { (x, y) } else { (y, x) };
        let table = self.table(lo.degree, hi.degree);
        let mut out = vec![T::zero(); self.dim(degree)];
        for (i, a) in lo.coeffs.iter().enumerate() {
            if a.is_negligible() {
                continue;
            }
            for (j, b) in hi.coeffs.iter().enumerate() {
                if b.is_negligible() {
                    continue;
                }
                let ab = a.clone() * b.clone();
                for (k, t) in table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = out[k].clone() + ab.clone() * T::from_rational(t);
                    }
                }
            }
        }
        Ok(CanonicalClass::from_coords(self.g, degree, out))
    }

    /// Product computed directly on forms, without the structure-constant table.
    pub fn mul_via_forms<T: Scalar>(
        &self,
        x: &CanonicalClass<T>,
        y: &CanonicalClass<T>,
    ) -> Result<CanonicalClass<T>> {
        let w = self.to_form(x)?.wedge(&self.to_form(y)?)?;
        self.extract(&w, x.degree + y.degree)
    }

    pub fn pow<T: Scalar>(&self, x: &CanonicalClass<T>, k: usize) -> Result<CanonicalClass<T>> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Intersection number of classes of complementary degree.
    pub fn pairing<T: Scalar>(&self, x: &CanonicalClass<T>, y: &CanonicalClass<T>) -> Result<T> {
        let p = self.mul(x, y)?;
        p.top_value().ok_or_else(|| Error::DegreeMismatch {
            expected: (2 * self.g).to_string(),
            found: p.degree.to_string(),
        })
    }

    /// Matrix of the pairing `N^r × N^{2g−r} → Q` in the two bases.
    pub fn pairing_matrix(&self, r: usize) -> Result<Vec<Vec<Q>>> {
        let s = 2 * self.g - r;
        let (dr, ds) = (self.dim(r), self.dim(s));
        let unit = |d: usize, n: usize, i: usize| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            CanonicalClass::from_coords(self.g, d, v)
        };
        (0..dr)
            .map(|i| (0..ds).map(|j| self.pairing(&unit(r, dr, i), &unit(s, ds, j))).collect())
            .collect()
    }

    /// Pullback `u_M^*`, extended multiplicatively from degree one.
    pub fn gl2_act<T: Scalar>(
        &self,
        m: &Gl2Matrix<T>,
        x: &CanonicalClass<T>,
    ) -> Result<CanonicalClass<T>> {
        self.check_class(x)?;
        if x.is_beyond_top() {
            return Ok(x.clone());
        }
        let images: Vec<CanonicalClass<T>> = m
            .degree_one_images()
            .into_iter()
            .map(|c| CanonicalClass::from_coords(self.g, 1, c.to_vec()))
            .collect();
        let basis = self.basis(x.degree)?;
        let mut acc = self.zero(x.degree);
        for (c, (scale, mono)) in x.coeffs.iter().zip(&basis.monomial_expr) {
            if c.is_negligible() {
                continue;
            }
            let mut img = self.one();
            for (gen, e) in [(0, mono.t1), (1, mono.t2), (2, mono.l)] {
                for _ in 0..e {
                    img = self.mul(&img, &images[gen])?;
                }
            }
            acc = acc.add(&img.scale(&(c.clone() * T::from_rational(scale))))?;
        }
        Ok(acc)
    }

    /// Coordinates of `x` (degree `2g − 1`) in the basis
    /// `(μ^{g−1}θ₁, μ^{g−1}θ₂, μ^{g−1}λ)`.
    pub fn mu_power_coords<T: Scalar>(&self, x: &CanonicalClass<T>) -> Result<[T; 3]> {
        self.check_class(x)?;
        let r = 2 * self.g - 1;
        if x.degree != r {
            return Err(Error::DegreeMismatch { expected: r.to_string(), found: x.degree.to_string() });
        }
        let mu_pow = self.pow(&self.mu::<Q>(), self.g - 1)?;
        let columns: Vec<Vec<Q>> = [Generator::Theta1, Generator::Theta2, Generator::Lambda]
            .into_iter()
            .map(|gen| self.mul(&mu_pow, &self.generator(gen)).map(|c| c.coeffs))
            .collect::<Result<_>>()?;
        if self.dim(r) != 3 {
            return Err(Error::NotInSpan);
        }
        let matrix: Vec<Vec<Q>> = (0..3).map(|i| (0..3).map(|j| columns[j][i].clone()).collect()).collect();
        let inverse = invert(&matrix).ok_or(Error::NotInSpan)?;
        let solved: Vec<T> = inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x.coeffs)
                    .fold(T::zero(), |acc, (m, v)| acc + T::from_rational(m) * v.clone())
            })
            .collect();
        Ok([solved[0].clone(), solved[1].clone(), solved[2].clone()])
    }

    /// Monomial key of each basis element of degree `r`.
    pub fn basis_keys(&self, r: usize) -> Result<Vec<String>> {
        Ok(self.basis(r)?.elements.iter().map(BasisElement::key).collect())
    }

    /// `Σ c_i · key_i` for display.
    pub fn describe<T: Scalar>(&self, x: &CanonicalClass<T>) -> String {
        if x.is_beyond_top() {
            return "0".to_string();
        }
        let Ok(keys) = self.basis_keys(x.degree) else {
            return "?".to_string();
        };
        let parts: Vec<String> = x
            .coeffs
            .iter()
            .zip(keys)
            .filter(|(c, _)| !c.is_negligible())
            .map(|(c, k)| format!("{c}*{k}"))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Expected `dim N^r_can` from the decomposition
/// `Sym^r N¹ ≅ ⊕_{0 ≤ 2i ≤ r} μ^i · Sym^{2r−4i} W` and the duality `r ↔ 2g − r`.
pub fn expected_dim(g: usize, r: usize) -> usize {
    if r > 2 * g {
        return 0;
    }
    let r = if r > g { 2 * g - r } else { r };
    (0..=r / 2).map(|i| 2 * r - 4 * i + 1).sum()
}

/// Exact Gauss–Jordan inverse; `None` if singular.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let lead = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= lead.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..2 * n {
                    let delta = f.clone() * a[col][k].clone();
                    a[r][k] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Exact rank by row reduction.
pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if !a[i][c].is_zero() {
                let f = a[i][c].clone() / a[r][c].clone();
                for k in c..cols {
                    let delta = f.clone() * a[r][k].clone();
                    a[i][k] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// `(−1)^g (2g)!`.
pub fn lambda_top_power_value(g: usize) -> Q {
    let f = Q::from_integer(crate::scalar::factorial(2 * g as u32));
    if g % 2 == 1 {
        -f
    } else {
        f
    }
}

/// One line of [`verify_relations`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub g: usize,
    pub checks: Vec<RelationCheck>,
    pub all_hold: bool,
}

/// Exact check of the structural identities of the ring at genus `g`:
/// vanishing of `θ_{a,b}^{g+1}` (generic and at 10 pseudo-random rational
/// points), the five `μ^{g−1}` identities in degree `2g`, the value of
/// `λ^{2g}`, the basis dimensions, and for `g = 2` the seven cubic relations.
pub fn verify_relations(g: usize) -> Result<RelationReport> {
    use rand::{Rng, SeedableRng};

    let ring = CanonicalRing::new(g)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, statement: String, holds: bool| {
        checks.push(RelationCheck { name: name.to_string(), statement, holds });
    };
    let t1 = ring.generator::<Q>(Generator::Theta1);
    let t2 = ring.generator::<Q>(Generator::Theta2);
    let l = ring.generator::<Q>(Generator::Lambda);
    let gu = g as u32;
    let m = |a, b, c| ring.monomial::<Q>(Monomial::new(a, b, c));

    for (name, mono) in [
        ("theta1^(g+1)", Monomial::new(gu + 1, 0, 0)),
        ("theta2^(g+1)", Monomial::new(0, gu + 1, 0)),
        ("theta1^g l", Monomial::new(gu, 0, 1)),
        ("theta2^g l", Monomial::new(0, gu, 1)),
    ] {
        let direct = form_of(&[(&t1, mono.t1 as usize), (&t2, mono.t2 as usize), (&l, mono.l as usize)])?;
        let v = ring.monomial::<Q>(mono);
        push(name, format!("{mono} = 0"), v.is_zero() && direct.is_zero());
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7e16 + g as u64);
    let mut all_rel = true;
    for _ in 0..10 {
        let a = Q::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=7).into());
        let b = Q::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=7).into());
        let th = theta_ab(g, &a, &b);
        let p = ring.pow(&th, g)?;
        all_rel &= ring.mul(&p, &th)?.is_zero();
    }
    push("theta-ab-vanishing", "(a^2 t1 + b^2 t2 + ab l)^(g+1) = 0 at 10 rational (a, b)".into(), all_rel);

    let mu_pow = ring.pow(&ring.mu::<Q>(), g - 1)?;
    let two_t1t2 = m(1, 1, 0).scale(&Q::from_integer(2.into()));
    for (name, x) in [
        ("mu-power-t1^2", m(2, 0, 0)),
        ("mu-power-t2^2", m(0, 2, 0)),
        ("mu-power-t1 l", m(1, 0, 1)),
        ("mu-power-t2 l", m(0, 1, 1)),
        ("mu-power-l^2+2t1t2", m(0, 0, 2).add(&two_t1t2)?),
    ] {
        let v = ring.mul(&mu_pow, &x)?;
        push(name, format!("mu^{} * ({}) = 0", g - 1, ring.describe(&x)), v.is_zero());
    }

    let lt = ring.pow(&l, 2 * g)?;
    let expected = lambda_top_power_value(g);
    push(
        "lambda^2g",
        format!("lambda^{} = {}", 2 * g, crate::scalar::format_rational(&expected)),
        lt.top_value() == Some(expected),
    );

    let dims_ok = (0..=2 * g).all(|r| ring.dim(r) == expected_dim(g, r));
    let dims: Vec<String> = (0..=2 * g).map(|r| ring.dim(r).to_string()).collect();
    push("dims", format!("dim N^r_can for r = 0..{}: {}", 2 * g, dims.join(", ")), dims_ok);

    if g == 2 {
        let six = Q::from_integer(6.into());
        let cubic = [
            ("g2-1", m(3, 0, 0)),
            ("g2-2", m(0, 3, 0)),
            ("g2-3", m(2, 0, 1)),
            ("g2-4", m(0, 2, 1)),
            ("g2-5", m(1, 2, 0).add(&m(0, 1, 2))?),
            ("g2-6", m(2, 1, 0).add(&m(1, 0, 2))?),
            ("g2-7", m(1, 1, 1).scale(&six).add(&m(0, 0, 3))?),
        ];
        for (name, x) in cubic {
            // re-derive through forms so the check does not trust the basis reduction
            let f = ring.to_form(&x)?;
            let direct = match name {
                "g2-5" => &form_of(&[(&t1, 1), (&t2, 2)])? + &form_of(&[(&t2, 1), (&l, 2)])?,
                "g2-6" => &form_of(&[(&t1, 2), (&t2, 1)])? + &form_of(&[(&t1, 1), (&l, 2)])?,
                "g2-7" => &form_of(&[(&t1, 1), (&t2, 1), (&l, 1)])?.scale_real(&six) + &form_of(&[(&l, 3)])?,
                _ => f.clone(),
            };
            push(name, format!("{} = 0", ring.describe(&x)), x.is_zero() && f.is_zero() && direct.is_zero());
        }
    }

    let all_hold = checks.iter().all(|c| c.holds);
    Ok(RelationReport { g, checks, all_hold })
}

/// `∏ xᵢ^{kᵢ}` expanded directly as a form from the generator coordinates.
fn form_of(parts: &[(&CanonicalClass<Q>, usize)]) -> Result<Form<Q>> {
    let mut acc: Option<Form<Q>> = None;
    for (x, k) in parts.iter().filter(|(_, k)| *k > 0) {
        let g = x.g();
        let which = x.coeffs().iter().position(|c| !c.is_zero()).expect("generator");
        let gen = [Generator::Theta1, Generator::Theta2, Generator::Lambda][which];
        let f = canonical_form::<Q>(g, gen).pow(*k);
        acc = Some(match acc {
            None => f,
            Some(a) => a.wedge(&f)?,
        });
    }
    Ok(acc.expect("nonempty product"))
}

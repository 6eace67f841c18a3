//! Weak positivity of codimension-2 classes.
//!
//! `x` is weakly positive iff `x ∧ iℓ₁∧ℓ̄₁ ∧ … ∧ iℓ_m∧ℓ̄_m ≥ 0` for all
//! holomorphic covectors `ℓ_j`, `m = 2g − 2`. Writing `c = ℓ₁∧…∧ℓ_m`, the
//! pairing is a Hermitian form `c* G c` on `∧^m`, computed once exactly. The
//! search minimizes `c* G c / ∏|ℓ_j|²` by block coordinate descent: with all
//! covectors but `ℓ_j` fixed the objective is a Rayleigh quotient in `ℓ_j`, so
//! each block step is a smallest-eigenvector computation.
//!
//! A negative value is rounded to rational covectors and re-evaluated exactly
//! on forms; only an exact negative value yields `NonMember`. A search that
//! never goes below `−tol` yields an uncertified `Member`.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Certificate, ConeVerdict, Status};
use crate::canring::{CanonicalClass, CanonicalRing};
use crate::error::{Error, Result};
use crate::exterior::{mask_indices, strongly_positive_product, subsets_lex, Form, Mask, Multivector};
use crate::scalar::{i_pow, round_to_rational, Scalar};
use crate::Rational as Q;

const RULE: &str = "weakly positive iff the product with every product of rank-one positive (1,1)-forms is nonnegative";

type C64 = Complex<f64>;

#[derive(Clone, Debug, PartialEq)]
pub struct WeakOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Tolerance on the normalized objective.
    pub tol: f64,
    /// Block sweeps per restart.
    pub max_sweeps: usize,
}

impl Default for WeakOptions {
    fn default() -> Self {
        WeakOptions { restarts: 64, seed: 0, tol: 1e-9, max_sweeps: 200 }
    }
}

/// Record of a search that found no negative value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeakSearchReport {
    pub restarts: usize,
    pub seed: u64,
    pub tol: f64,
    pub min_objective: f64,
}

/// Rational covectors `ℓ_j` with an exact negative pairing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CovectorWitness {
    #[serde(serialize_with = "crate::serde_q::complex_matrix")]
    pub covectors: Vec<Vec<Complex<Q>>>,
    #[serde(serialize_with = "crate::serde_q::scalar")]
    pub value: Q,
}

impl CovectorWitness {
    pub fn revalidate(&self, ring: &CanonicalRing, x: &CanonicalClass<Q>) -> Result<bool> {
        let v = weak_objective_exact(ring, x, &self.covectors)?;
        Ok(v == self.value && v.is_negative())
    }
}

/// `top_scalar(x ∧ ∏ iℓ_j∧ℓ̄_j)`, evaluated on forms.
pub fn weak_objective_exact(
    ring: &CanonicalRing,
    x: &CanonicalClass<Q>,
    covectors: &[Vec<Complex<Q>>],
) -> Result<Q> {
    let dim = 2 * ring.g();
    let m = dim - x.degree();
    if covectors.len() != m || covectors.iter().any(|l| l.len() != dim) {
        return Err(Error::InvalidArgument(format!("need {m} covectors of length {dim}")));
    }
    let ells: Vec<Form<Q>> = covectors.iter().map(|l| Form::covector(l)).collect();
    let s = strongly_positive_product(&ells, dim)?;
    ring.to_form(x)?.wedge(&s)?.top_scalar()
}

/// The Hermitian matrix `G` on `∧^m C^{2g}` with
/// `x ∧ i^{m²} c∧c̄ = (c* G c) ω₀`, indexed by lexicographic `m`-subsets.
pub fn pairing_matrix(ring: &CanonicalRing, x: &CanonicalClass<Q>) -> Result<(Vec<Mask>, Vec<Vec<Complex<Q>>>)> {
    let dim = 2 * ring.g();
    let m = dim - x.degree();
    let basis = subsets_lex(dim, m);
    let position = |mask: Mask| basis.iter().position(|&b| b == mask);
    let full: Mask = if dim == 32 { u32::MAX } else { (1 << dim) - 1 };
    let zero = Complex::new(Q::zero(), Q::zero());
    let mut g = vec![vec![zero; basis.len()]; basis.len()];
    let unit: Complex<Q> = i_pow((m * m) as i64);
    let f = ring.to_form(x)?;
    for (idx, coef) in f.terms() {
        let (a, b) = (idx.holo, idx.anti);
        let (Some(i), Some(j)) = (position(full & !a), position(full & !b)) else {
            continue;
        };
        // x-term ∧ i^{m²} dz_I ∧ dz̄_J
        let term = Form::monomial(dim, &mask_indices(a), &mask_indices(b), coef.clone());
        let probe = Form::monomial(dim, &mask_indices(basis[i]), &mask_indices(basis[j]), unit.clone());
        let v = term.wedge(&probe)?.top_coefficient()?;
        // c_I conj(c_J) pairs with G_{JI}
        g[j][i] = g[j][i].clone() + v;
    }
    Ok((basis, g))
}

struct Search {
    dim: usize,
    basis: Vec<Mask>,
    g: DMatrix<C64>,
}

impl Search {
    fn wedge_vector(&self, ells: &[Vec<C64>], skip: Option<usize>) -> Multivector<C64> {
        let mut w = Multivector::one(self.dim);
        for (j, l) in ells.iter().enumerate() {
            if Some(j) == skip {
                continue;
            }
            let lj = Multivector::from_terms(
                self.dim,
                l.iter().enumerate().map(|(k, c)| (1 << k, *c)),
            );
            w = w.wedge(&lj).expect("same dimension");
        }
        w
    }

    fn coords(&self, mv: &Multivector<C64>) -> nalgebra::DVector<C64> {
        nalgebra::DVector::from_iterator(self.basis.len(), self.basis.iter().map(|&b| mv.coefficient(b)))
    }

    fn objective(&self, ells: &[Vec<C64>]) -> f64 {
        let c = self.coords(&self.wedge_vector(ells, None));
        let v = (c.adjoint() * &self.g * &c)[(0, 0)].re;
        let norm: f64 = ells.iter().map(|l| l.iter().map(|z| z.norm_sqr()).sum::<f64>()).product();
        v / norm
    }

    /// Replace `ℓ_j` by the minimizer of the Rayleigh quotient.
    fn block_step(&self, ells: &mut [Vec<C64>], j: usize) {
        let w = self.wedge_vector(ells, Some(j));
        let n = self.basis.len();
        let mut phi = DMatrix::<C64>::zeros(n, self.dim);
        for k in 0..self.dim {
            let ek = Multivector::blade(self.dim, &[k], Complex::new(1.0, 0.0));
            let col = self.coords(&ek.wedge(&w).expect("same dimension"));
            phi.set_column(k, &col);
        }
        let mut k = phi.adjoint() * &self.g * &phi;
        k = (&k + k.adjoint()) * Complex::new(0.5, 0.0);
        let eig = k.symmetric_eigen();
        let (imin, _) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
        ells[j] = eig.eigenvectors.column(imin).iter().copied().collect();
    }
}

fn random_covectors(rng: &mut ChaCha8Rng, m: usize, dim: usize) -> Vec<Vec<C64>> {
    (0..m)
        .map(|_| (0..dim).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        .collect()
}

/// Round covectors to rationals with the given denominator after scaling each
/// to unit max-modulus.
fn rationalize(ells: &[Vec<C64>], den: i64) -> Vec<Vec<Complex<Q>>> {
    ells.iter()
        .map(|l| {
            let scale = l.iter().map(|z| z.re.abs().max(z.im.abs())).fold(0.0, f64::max);
            let scale = if scale > 0.0 { scale } else { 1.0 };
            l.iter()
                .map(|z| Complex::new(round_to_rational(z.re / scale, den), round_to_rational(z.im / scale, den)))
                .collect()
        })
        .collect()
}

/// Smallest rational rounding of the covectors with an exact negative value.
fn certify(ring: &CanonicalRing, x: &CanonicalClass<Q>, ells: &[Vec<C64>]) -> Result<Option<CovectorWitness>> {
    // also try phase-normalized covectors: the objective is invariant under ℓ ↦ e^{iφ}ℓ
    let normalized: Vec<Vec<C64>> = ells
        .iter()
        .map(|l| {
            let big = l.iter().copied().fold(Complex::new(0.0, 0.0), |a, z| if z.norm() > a.norm() { z } else { a });
            let phase = if big.norm() > 0.0 { big.conj() / big.norm() } else { Complex::new(1.0, 0.0) };
            l.iter().map(|z| z * phase).collect()
        })
        .collect();
    for den in [1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 64, 128, 256, 1024, 4096, 1 << 16, 1 << 20] {
        for candidate in [&normalized, &ells.to_vec()] {
            let covectors = rationalize(candidate, den);
            let value = weak_objective_exact(ring, x, &covectors)?;
            if value.is_negative() {
                return Ok(Some(CovectorWitness { covectors, value }));
            }
        }
    }
    Ok(None)
}

/// Multi-start search for a refutation of weak positivity of a degree-2 class
/// (any `g` up to the ring's maximum).
pub fn weak_positivity_oracle(
    ring: &CanonicalRing,
    x: &CanonicalClass<Q>,
    opts: &WeakOptions,
) -> Result<ConeVerdict> {
    super::require_degree(x, 2)?;
    if opts.restarts == 0 {
        return Err(Error::ZeroRestarts);
    }
    if !(opts.tol.is_finite() && opts.tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let dim = 2 * ring.g();
    let m = dim - 2;
    let (basis, g) = pairing_matrix(ring, x)?;
    let n = basis.len();
    let gf = DMatrix::from_fn(n, n, |i, j| Complex::new(g[i][j].re.to_f64(), g[i][j].im.to_f64()));
    let search = Search { dim, basis, g: gf };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut best = f64::INFINITY;
    let mut best_ells = Vec::new();
    for _ in 0..opts.restarts {
        let mut ells = random_covectors(&mut rng, m, dim);
        let mut value = search.objective(&ells);
        for _ in 0..opts.max_sweeps {
            for j in 0..m {
                search.block_step(&mut ells, j);
            }
            let next = search.objective(&ells);
            let done = (value - next).abs() <= 1e-15 * value.abs().max(1.0);
            value = next;
            if done {
                break;
            }
        }
        if value < best {
            best = value;
            best_ells = ells;
        }
        if best < -opts.tol {
            if let Some(w) = certify(ring, x, &best_ells)? {
                return Ok(ConeVerdict::new(Status::NonMember, RULE, Certificate::Covectors(w)));
            }
        }
    }
    let report = WeakSearchReport { restarts: opts.restarts, seed: opts.seed, tol: opts.tol, min_objective: best };
    if best >= -opts.tol {
        let mut v = ConeVerdict::new(Status::Member, RULE, Certificate::Search(report));
        v.certified = false;
        Ok(v)
    } else {
        Ok(ConeVerdict::new(Status::Unknown, RULE, Certificate::Search(report)))
    }
}

//! Hermitian matrices over `Q(i)` (or `C` in floating point) and an exact
//! semidefiniteness decision.
//!
//! `H ⪰ 0` iff every coefficient `e_m` of `det(tI − H) = Σ (−1)^m e_m t^{n−m}`
//! is nonnegative. The characteristic polynomial is computed division-free by
//! Berkowitz; Faddeev–LeVerrier gives an independent second route used when
//! certificates are re-checked.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{subsets_lex, Form, MultiIndex};
use crate::scalar::{complex_is_negligible, i_pow, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix<T: Scalar> {
    entries: Vec<Vec<Complex<T>>>,
}

impl<T: Scalar> HermitianMatrix<T> {
    /// Fails unless the matrix is square with `H_ji = conj(H_ij)`.
    pub fn new(entries: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: row.len() });
            }
            for j in 0..=i {
                if !complex_is_negligible(&(entries[j][i].clone() - row[j].conj())) {
                    return Err(Error::InvalidArgument(format!("entry ({i},{j}) breaks symmetry")));
                }
            }
        }
        Ok(HermitianMatrix { entries })
    }

    /// Real symmetric matrix.
    pub fn from_real(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| Complex::new(x, T::zero())).collect())
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix { entries: vec![vec![Complex::new(T::zero(), T::zero()); n]; n] }
    }

    /// The Hermitian form on `∧^k V` attached to a `(k, k)`-form: with
    /// `f = i^{k²} Σ h_IJ dz_I ∧ dz̄_J`, rows and columns indexed by the
    /// `k`-subsets of the coordinates in lexicographic order.
    pub fn from_form(f: &Form<T>, k: usize) -> Result<Self> {
        if !f.is_zero() && !f.is_homogeneous(k, k) {
            return Err(Error::DegreeMismatch {
                expected: format!("({k},{k})"),
                found: "mixed or other bidegree".to_string(),
            });
        }
        let basis = subsets_lex(f.dim(), k);
        let unit: Complex<T> = i_pow((k * k) as i64);
        let entries = basis
            .iter()
            .map(|&a| {
                basis.iter().map(|&b| f.coefficient(MultiIndex::new(a, b)) / unit.clone()).collect()
            })
            .collect();
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Complex<T>>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex<T> {
        &self.entries[i][j]
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.dim() != o.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: o.dim() });
        }
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect())
            .collect();
        Ok(HermitianMatrix { entries })
    }

    pub fn scale(&self, c: &T) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.clone() * c.clone()).collect())
            .collect();
        HermitianMatrix { entries }
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> HermitianMatrix<U> {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| Complex::new(f(&x.re), f(&x.im))).collect())
            .collect();
        HermitianMatrix { entries }
    }

    /// Principal submatrix on the given indices.
    pub fn principal(&self, idx: &[usize]) -> Self {
        let entries =
            idx.iter().map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect()).collect();
        HermitianMatrix { entries }
    }

    /// `v* H v`.
    pub fn quadratic_form(&self, v: &[Complex<T>]) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (i, row) in self.entries.iter().enumerate() {
            for (j, h) in row.iter().enumerate() {
                acc = acc + v[i].conj() * h.clone() * v[j].clone();
            }
        }
        acc
    }

    /// Coefficients `[c_0 = 1, c_1, …, c_n]` of `det(tI − H) = Σ c_m t^{n−m}`,
    /// by Berkowitz's division-free algorithm.
    pub fn charpoly_berkowitz(&self) -> Vec<Complex<T>> {
        let zero = || Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let n = self.dim();
        if n == 0 {
            return vec![one];
        }
        let a = &self.entries;
        let mut poly = vec![one.clone(), -a[0][0].clone()];
        for r in 1..n {
            // leading block M = a[..r][..r], column C = a[..r][r], row R = a[r][..r]
            let mut q = vec![one.clone(), -a[r][r].clone()];
            let mut mc: Vec<Complex<T>> = (0..r).map(|i| a[i][r].clone()).collect();
            for _ in 0..r {
                let rmc = (0..r).fold(zero(), |acc, j| acc + a[r][j].clone() * mc[j].clone());
                q.push(-rmc);
                mc = (0..r)
                    .map(|i| (0..r).fold(zero(), |acc, j| acc + a[i][j].clone() * mc[j].clone()))
                    .collect();
            }
            // Toeplitz(q) · poly, both descending
            let next: Vec<Complex<T>> = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r))
                        .filter(|&j| i - j < q.len())
                        .fold(zero(), |acc, j| acc + q[i - j].clone() * poly[j].clone())
                })
                .collect();
            poly = next;
        }
        poly
    }

    /// Same coefficients as [`Self::charpoly_berkowitz`], by Faddeev–LeVerrier.
    pub fn charpoly_faddeev(&self) -> Vec<Complex<T>> {
        let zero = || Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let n = self.dim();
        let a = &self.entries;
        let mut coeffs = vec![one.clone()];
        let mut m: Vec<Vec<Complex<T>>> = vec![vec![zero(); n]; n];
        for k in 1..=n {
            // M_k = A M_{k−1} + c_{k−1} I
            let mut next = vec![vec![zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    next[i][j] = (0..n).fold(zero(), |acc, l| acc + a[i][l].clone() * m[l][j].clone());
                }
                next[i][i] = next[i][i].clone() + coeffs[k - 1].clone();
            }
            m = next;
            let tr = (0..n).fold(zero(), |acc, i| {
                acc + (0..n).fold(zero(), |acc2, l| acc2 + a[i][l].clone() * m[l][i].clone())
            });
            coeffs.push(-tr / Complex::new(T::from_int(k as i64), T::zero()));
        }
        coeffs
    }

    /// `e_0 = 1, …, e_n`, the elementary symmetric functions of the eigenvalues.
    pub fn elementary_symmetric(&self) -> Result<Vec<T>> {
        coefficients_to_e(&self.charpoly_berkowitz())
    }

    pub fn is_psd(&self) -> Result<bool> {
        Ok(self.elementary_symmetric()?.iter().all(Scalar::is_nonnegative))
    }

    /// Rank of a semidefinite matrix: the largest `m` with `e_m ≠ 0`.
    pub fn rank_psd(&self) -> Result<usize> {
        let e = self.elementary_symmetric()?;
        Ok(e.iter().rposition(|x| !x.is_negligible()).unwrap_or(0))
    }

    /// A vector with `v* H v < 0`, or `None` when `H ⪰ 0`. Found by symmetric
    /// pivoting: a negative diagonal entry, a zero diagonal entry with a
    /// nonzero off-diagonal entry in its row, or recursion into the Schur
    /// complement of a positive pivot.
    pub fn negative_vector(&self) -> Option<Vec<Complex<T>>> {
        let n = self.dim();
        let zero = || Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let unit = |i: usize, c: Complex<T>| {
            let mut v = vec![zero(); n];
            v[i] = c;
            v
        };
        let h = &self.entries;
        if let Some(i) = (0..n).find(|&i| h[i][i].re.is_negative() && !h[i][i].re.is_negligible()) {
            return Some(unit(i, one));
        }
        for i in (0..n).filter(|&i| h[i][i].re.is_negligible()) {
            if let Some(j) = (0..n).find(|&j| j != i && !complex_is_negligible(&h[i][j])) {
                // v = x e_i + e_j, v*Hv = 2 Re(conj(x) H_ij) + H_jj = −1
                let norm = h[i][j].norm_sqr();
                let s = (h[j][j].re.clone() + T::one()) / (T::from_int(2) * norm);
                let mut v = unit(i, -h[i][j].clone() * Complex::new(s, T::zero()));
                v[j] = one;
                return Some(v);
            }
        }
        let p = (0..n).find(|&i| !h[i][i].re.is_negligible())?;
        let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        let pivot = h[p][p].clone();
        let schur: Vec<Vec<Complex<T>>> = rest
            .iter()
            .map(|&a| {
                rest.iter()
                    .map(|&b| h[a][b].clone() - h[a][p].clone() * h[p][b].clone() / pivot.clone())
                    .collect()
            })
            .collect();
        let w = HermitianMatrix { entries: schur }.negative_vector()?;
        // v_p = −(Σ_b H_pb w_b) / H_pp makes v*Hv = w* S w
        let hw = rest.iter().zip(&w).fold(zero(), |acc, (&b, wb)| acc + h[p][b].clone() * wb.clone());
        let mut v = vec![zero(); n];
        v[p] = -hw / pivot;
        for (&b, wb) in rest.iter().zip(w) {
            v[b] = wb;
        }
        Some(v)
    }
}

/// `e_m = (−1)^m c_m`; fails if a coefficient has a non-negligible imaginary
/// part (impossible for a Hermitian input).
pub fn coefficients_to_e<T: Scalar>(c: &[Complex<T>]) -> Result<Vec<T>> {
    c.iter()
        .enumerate()
        .map(|(m, z)| {
            if !z.im.is_negligible() {
                return Err(Error::NotReal);
            }
            Ok(if m % 2 == 1 { -z.re.clone() } else { z.re.clone() })
        })
        .collect()
}

/// Exact PSD certificate: the coefficients `e_m` and the matrix they belong to.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsdCertificate {
    #[serde(serialize_with = "crate::serde_q::vec")]
    pub elementary_symmetric: Vec<crate::Rational>,
}

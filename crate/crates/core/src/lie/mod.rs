//! Brackets on a fixed decomposition `g = k + p`.
//!
//! A [`LieBracket`] stores dense structure constants `c[i][j][k]` with
//! `mu(e_i, e_j) = sum_k c[i][j][k] e_k` over the combined basis
//! `(Z_1..Z_q, X_1..X_n)`. Indices `0..q` label `k`, indices `q..q+n`
//! label `p`. Every constructor keeps the tensor exactly antisymmetric in
//! its first two slots.

mod action;
mod derivation;
pub mod io;
mod killing;
mod membership;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use action::{group_action, pi_action};
pub use derivation::{derivation_space, DerivationConstraint};
pub use killing::{ad_k_invariant_inner_product_defect, canonicalize_reductive, killing_form};
pub use membership::{check_membership, jacobi_residual, H2Status, MembershipReport, MembershipTolerances};

/// Dimensions of the isotropy part `k` and the tangent part `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    q: usize,
    n: usize,
}

impl Decomposition {
    pub fn new(q: usize, n: usize) -> Result<Self> {
        if q + n == 0 {
            return Err(Error::EmptyDecomposition);
        }
        Ok(Self { q, n })
    }

    /// Decomposition with trivial isotropy (`q = 0`).
    pub fn lie_group(n: usize) -> Result<Self> {
        Self::new(0, n)
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total dimension `q + n`.
    #[inline]
    pub fn dim(&self) -> usize {
        self.q + self.n
    }

    #[inline]
    pub fn is_k(&self, i: usize) -> bool {
        i < self.q
    }

    /// Combined-basis indices of `p`.
    pub fn p_indices(&self) -> std::ops::Range<usize> {
        self.q..self.q + self.n
    }

    /// Combined-basis indices of `k`.
    pub fn k_indices(&self) -> std::ops::Range<usize> {
        0..self.q
    }

    /// Ordered list of the independent `p x p` slots `(i, j, k)` with
    /// `q <= i < j` and `k` arbitrary.
    pub fn pp_slots(&self) -> Vec<(usize, usize, usize)> {
        let dim = self.dim();
        let mut slots = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2 * dim);
        for i in self.p_indices() {
            for j in i + 1..dim {
                for k in 0..dim {
                    slots.push((i, j, k));
                }
            }
        }
        slots
    }
}

/// Skew-symmetric bilinear map on `g = k + p`, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct LieBracket<T: Scalar> {
    dec: Decomposition,
    coeffs: Vec<T>,
}

impl<T: Scalar> LieBracket<T> {
    /// The zero (abelian) bracket.
    pub fn zero(dec: Decomposition) -> Self {
        let d = dec.dim();
        Self { dec, coeffs: vec![T::zero(); d * d * d] }
    }

    /// Builds a bracket from `(i, j, k, c)` terms meaning `mu(e_i, e_j) += c e_k`.
    /// Antisymmetric completion is automatic; `i == j` terms must vanish.
    pub fn from_terms(dec: Decomposition, terms: &[(usize, usize, usize, T)]) -> Result<Self> {
        let mut mu = Self::zero(dec);
        let d = dec.dim();
        for &(i, j, k, c) in terms {
            for idx in [i, j, k] {
                if idx >= d {
                    return Err(Error::IndexOutOfRange { index: idx, dim: d });
                }
            }
            if i == j {
                if c != T::zero() {
                    return Err(Error::Format(format!("diagonal term mu(e_{i}, e_{i}) must vanish")));
                }
                continue;
            }
            let cur = mu.get(i, j, k);
            mu.set(i, j, k, cur + c);
        }
        Ok(mu)
    }

    /// Builds a bracket from a full coefficient array, antisymmetrizing it.
    pub fn from_coeffs_antisymmetrized(dec: Decomposition, coeffs: Vec<T>) -> Result<Self> {
        let d = dec.dim();
        if coeffs.len() != d * d * d {
            return Err(Error::DimensionMismatch { expected: d * d * d, got: coeffs.len() });
        }
        let raw = Self { dec, coeffs };
        let mut mu = Self::zero(dec);
        let half = T::lit(0.5);
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    mu.set(i, j, k, (raw.get(i, j, k) - raw.get(j, i, k)) * half);
                }
            }
        }
        Ok(mu)
    }

    #[inline]
    pub fn decomposition(&self) -> Decomposition {
        self.dec
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dec.dim()
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        let d = self.dec.dim();
        (i * d + j) * d + k
    }

    /// Structure constant `c[i][j][k]`.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> T {
        self.coeffs[self.idx(i, j, k)]
    }

    /// Sets `c[i][j][k] = v` and `c[j][i][k] = -v`.
    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, k: usize, v: T) {
        debug_assert!(i != j || v == T::zero());
        let a = self.idx(i, j, k);
        let b = self.idx(j, i, k);
        self.coeffs[a] = v;
        self.coeffs[b] = -v;
    }

    /// Returns a copy with `c[i][j][k] = v` (antisymmetric partner updated).
    pub fn with_coefficient(mut self, i: usize, j: usize, k: usize, v: T) -> Self {
        if i != j {
            self.set(i, j, k, v);
        }
        self
    }

    /// Raw coefficient array in `(i, j, k)` row-major order.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `mu(e_i, e_j)` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<T> {
        let d = self.dim();
        (0..d).map(|k| self.get(i, j, k)).collect()
    }

    /// `mu(x, y)` for coordinate vectors `x`, `y`.
    pub fn apply(&self, x: &[T], y: &[T]) -> Vec<T> {
        let d = self.dim();
        let mut out = vec![T::zero(); d];
        for i in 0..d {
            if x[i] == T::zero() {
                continue;
            }
            for j in 0..d {
                let w = x[i] * y[j];
                if w == T::zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * self.get(i, j, k);
                }
            }
        }
        out
    }

    /// Matrix of `ad_mu e_i`, i.e. column `j` is `mu(e_i, e_j)`.
    pub fn ad(&self, i: usize) -> DMatrix<T> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |k, j| self.get(i, j, k))
    }

    /// `ad_mu Z_a |_p` projected to `p` (an `n x n` matrix), `a < q`.
    pub fn ad_k_on_p(&self, a: usize) -> DMatrix<T> {
        let q = self.dec.q();
        let n = self.dec.n();
        DMatrix::from_fn(n, n, |r, c| self.get(a, q + c, q + r))
    }

    /// Structure constants of `mu_k`, the `k`-component of `mu|_{p x p}`,
    /// returned as a bracket supported on those slots only.
    pub fn mu_k(&self) -> Self {
        self.pp_part(|k| self.dec.is_k(k))
    }

    /// Structure constants of `mu_p`, the `p`-component of `mu|_{p x p}`.
    pub fn mu_p(&self) -> Self {
        self.pp_part(|k| !self.dec.is_k(k))
    }

    fn pp_part(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut out = Self::zero(self.dec);
        for (i, j, k) in self.dec.pp_slots() {
            if keep(k) {
                out.set(i, j, k, self.get(i, j, k));
            }
        }
        out
    }

    /// Values of the independent `p x p` slots in [`Decomposition::pp_slots`] order.
    pub fn pp_values(&self) -> Vec<T> {
        self.dec.pp_slots().into_iter().map(|(i, j, k)| self.get(i, j, k)).collect()
    }

    /// Copy of `self` with the `p x p` slots replaced; `k x g` is kept verbatim.
    pub fn with_pp_values(&self, values: &[T]) -> Result<Self> {
        let slots = self.dec.pp_slots();
        if values.len() != slots.len() {
            return Err(Error::DimensionMismatch { expected: slots.len(), got: values.len() });
        }
        let mut out = self.clone();
        for (&(i, j, k), &v) in slots.iter().zip(values) {
            out.set(i, j, k, v);
        }
        Ok(out)
    }

    /// Squared norm `sum_{i,j} |mu(Y_i, Y_j)|^2` over ordered basis pairs.
    pub fn norm_sq(&self) -> T {
        crate::scalar::norm_sq(&self.coeffs)
    }

    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    /// Full norm together with the component norms of `mu|_{p x p}`.
    pub fn bracket_norm(&self) -> BracketNorm<T> {
        let mut k_sq = T::zero();
        let mut p_sq = T::zero();
        let two = T::lit(2.0);
        for (i, j, k) in self.dec.pp_slots() {
            let v = self.get(i, j, k);
            // Each independent slot accounts for both ordered pairs.
            if self.dec.is_k(k) {
                k_sq += two * v * v;
            } else {
                p_sq += two * v * v;
            }
        }
        BracketNorm { total_sq: self.norm_sq(), mu_k_sq: k_sq, mu_p_sq: p_sq }
    }

    /// Inner product over ordered basis pairs.
    pub fn dot(&self, other: &Self) -> T {
        self.coeffs.iter().zip(&other.coeffs).fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }

    /// `|self - other|`.
    pub fn distance(&self, other: &Self) -> T {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(T::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b))
            .sqrt()
    }

    /// Linear combination `self + s * other` (as elements of the vector space of brackets).
    pub fn add_scaled(&self, s: T, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a + s * b).collect();
        Self { dec: self.dec, coeffs }
    }

    /// Scalar multiple of the whole tensor (vector-space scaling, not [`rescale`](Self::rescale)).
    pub fn scaled(&self, s: T) -> Self {
        Self { dec: self.dec, coeffs: self.coeffs.iter().map(|&a| a * s).collect() }
    }

    /// Geometric rescaling `c . mu`: unchanged on `k x g`, and
    /// `c^2 mu_k + c mu_p` on `p x p`.
    pub fn rescale(&self, c: T) -> Result<Self> {
        if c == T::zero() {
            return Err(Error::ZeroRescale);
        }
        let mut out = self.clone();
        let c2 = c * c;
        for (i, j, k) in self.dec.pp_slots() {
            let f = if self.dec.is_k(k) { c2 } else { c };
            out.set(i, j, k, self.get(i, j, k) * f);
        }
        Ok(out)
    }

    /// The degenerate point `0 . mu`: `mu` on `k x g` and zero on `p x p`.
    pub fn flat_limit(&self) -> Self {
        let mut out = self.clone();
        for (i, j, k) in self.dec.pp_slots() {
            out.set(i, j, k, T::zero());
        }
        out
    }

    /// True when `mu|_{p x p}` vanishes identically.
    pub fn pp_is_zero(&self) -> bool {
        self.dec.pp_slots().into_iter().all(|(i, j, k)| self.get(i, j, k) == T::zero())
    }

    /// Largest `|c[i][j][k] + c[j][i][k]|`; zero for every constructed value.
    pub fn antisymmetry_defect(&self) -> T {
        let d = self.dim();
        let mut worst = T::zero();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let s = (self.get(i, j, k) + self.get(j, i, k)).abs();
                    if s > worst {
                        worst = s;
                    }
                }
            }
        }
        worst
    }

    /// Converts to another scalar type through `f64`.
    pub fn cast<U: Scalar>(&self) -> LieBracket<U> {
        LieBracket { dec: self.dec, coeffs: self.coeffs.iter().map(|c| U::lit(c.as_f64())).collect() }
    }
}

/// Norms reported by [`LieBracket::bracket_norm`] (squared values).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketNorm<T> {
    pub total_sq: T,
    pub mu_k_sq: T,
    pub mu_p_sq: T,
}

/// Linear endomorphism of `g` written in the combined basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap<T: Scalar> {
    dec: Decomposition,
    matrix: DMatrix<T>,
}

impl<T: Scalar> LinearMap<T> {
    pub fn new(dec: Decomposition, matrix: DMatrix<T>) -> Result<Self> {
        let d = dec.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: matrix.nrows().max(matrix.ncols()) });
        }
        Ok(Self { dec, matrix })
    }

    pub fn identity(dec: Decomposition) -> Self {
        let d = dec.dim();
        Self { dec, matrix: DMatrix::identity(d, d) }
    }

    /// `diag(I_q, block)` for an `n x n` block acting on `p`.
    pub fn from_p_block(dec: Decomposition, block: &DMatrix<T>) -> Result<Self> {
        if block.nrows() != dec.n() || block.ncols() != dec.n() {
            return Err(Error::DimensionMismatch { expected: dec.n(), got: block.nrows() });
        }
        Ok(Self { dec, matrix: crate::linalg::block_diag_identity(dec.q(), block) })
    }

    /// `diag(0_q, block)`.
    pub fn from_p_block_zero_k(dec: Decomposition, block: &DMatrix<T>) -> Result<Self> {
        let mut m = Self::from_p_block(dec, block)?;
        for i in 0..dec.q() {
            m.matrix[(i, i)] = T::zero();
        }
        Ok(m)
    }

    pub fn decomposition(&self) -> Decomposition {
        self.dec
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<T> {
        self.matrix
    }

    /// `D_p = proj_p o D|_p`.
    pub fn p_block(&self) -> DMatrix<T> {
        let (q, n) = (self.dec.q(), self.dec.n());
        self.matrix.view((q, q), (n, n)).into_owned()
    }

    /// `proj_k o D|_p`, the `q x n` block mapping `p` into `k`.
    pub fn p_to_k_block(&self) -> DMatrix<T> {
        let (q, n) = (self.dec.q(), self.dec.n());
        self.matrix.view((0, q), (q, n)).into_owned()
    }

    /// `D|_k` as a `(q+n) x q` block.
    pub fn on_k(&self) -> DMatrix<T> {
        self.matrix.columns(0, self.dec.q()).into_owned()
    }

    /// Largest entry of `proj_p o D|_k`; zero iff `D k ⊂ k`.
    pub fn k_leak(&self) -> T {
        let (q, n) = (self.dec.q(), self.dec.n());
        self.matrix.view((q, 0), (n, q)).amax()
    }

    pub fn preserves_k(&self, tol: T) -> bool {
        self.k_leak() <= tol
    }

    pub fn vanishes_on_k(&self, tol: T) -> bool {
        self.dec.q() == 0 || self.on_k().amax() <= tol
    }

    pub fn preserves_p(&self, tol: T) -> bool {
        self.dec.q() == 0 || self.p_to_k_block().amax() <= tol
    }

    /// Block form `[[0, 0], [0, D_p]]`.
    pub fn is_p_block_only(&self, tol: T) -> bool {
        self.vanishes_on_k(tol) && self.preserves_p(tol)
    }

    pub fn transpose(&self) -> Self {
        Self { dec: self.dec, matrix: self.matrix.transpose() }
    }

    pub fn is_invertible(&self, tol: T) -> bool {
        let sv = crate::linalg::singular_values(&self.matrix);
        let smax = sv.first().copied().unwrap_or_else(T::zero);
        let smin = sv.last().copied().unwrap_or_else(T::zero);
        smin > tol * smax
    }
}

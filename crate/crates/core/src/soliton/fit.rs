//! Least-squares soliton fits over derivation spaces.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::curvature::ricci_operator;
use crate::error::Result;
use crate::lie::{derivation_space, pi_action, DerivationConstraint, LieBracket, LinearMap};
use crate::linalg::{lstsq_min_norm, sym, RANK_TOL};
use crate::scalar::Scalar;

/// Relative acceptance threshold: `residual <= ACCEPT_TOL * (1 + |Ric|)`.
pub const ACCEPT_TOL: f64 = 1e-8;

/// Form of the soliton equation being fitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitKind {
    /// `Ric = cI + D_p`, `D k ⊂ k`.
    Algebraic,
    /// `Ric = cI + (D_p + D_p^t)/2`, `D k = 0`.
    SemiAlgebraic,
}

/// Result of a soliton fit: the minimum-norm minimizer `(c, D)`.
#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct SolitonFit<T: Scalar> {
    pub kind: FitKind,
    #[serde(serialize_with = "crate::serde_util::scalar")]
    pub c: T,
    #[serde(rename = "d", serialize_with = "crate::serde_util::linear_map")]
    pub derivation: LinearMap<T>,
    #[serde(serialize_with = "crate::serde_util::scalar")]
    pub residual: T,
    #[serde(serialize_with = "crate::serde_util::scalar")]
    pub threshold: T,
    pub accepted: bool,
}

impl<T: Scalar> SolitonFit<T> {
    /// `D_p` of the fitted derivation.
    pub fn d_p(&self) -> DMatrix<T> {
        self.derivation.p_block()
    }

    /// Re-checks the certificate from scratch: the Ricci identity, `pi(D) mu = 0`
    /// and the constraint on `D|_k`, each to the relative tolerance
    /// [`ACCEPT_TOL`].
    pub fn verify(&self, mu: &LieBracket<T>) -> Result<bool> {
        let tol = T::lit(ACCEPT_TOL);
        let ric = ricci_operator(mu)?.ric;
        let n = ric.nrows();
        let dp = self.d_p();
        let rhs = match self.kind {
            FitKind::Algebraic => dp,
            FitKind::SemiAlgebraic => sym(&dp),
        };
        let ricci_ok = (&ric - DMatrix::identity(n, n) * self.c - rhs).norm() <= tol * (T::one() + ric.norm());
        let d = self.derivation.matrix();
        let der_ok = pi_action(d, mu)?.norm() <= tol * (T::one() + mu.norm() * d.norm());
        let k_ok = match self.kind {
            FitKind::Algebraic => self.derivation.preserves_k(tol),
            FitKind::SemiAlgebraic => self.derivation.vanishes_on_k(tol),
        };
        Ok(ricci_ok && der_ok && k_ok)
    }
}

fn fit<T: Scalar>(mu: &LieBracket<T>, constraint: DerivationConstraint, kind: FitKind) -> Result<SolitonFit<T>> {
    let ric = ricci_operator(mu)?.ric;
    let dec = mu.decomposition();
    let n = dec.n();
    let basis = derivation_space(mu, constraint);

    let mut a = DMatrix::<T>::zeros(n * n, basis.len() + 1);
    a.column_mut(0).copy_from_slice(DMatrix::<T>::identity(n, n).as_slice());
    for (col, d) in basis.iter().enumerate() {
        let dp = match kind {
            FitKind::Algebraic => d.p_block(),
            FitKind::SemiAlgebraic => sym(&d.p_block()),
        };
        a.column_mut(col + 1).copy_from_slice(dp.as_slice());
    }
    let b = DVector::from_column_slice(ric.as_slice());
    let x = lstsq_min_norm(&a, &b, T::lit(RANK_TOL));

    let d = dec.dim();
    let mut m = DMatrix::<T>::zeros(d, d);
    for (coef, basis_map) in x.iter().skip(1).zip(&basis) {
        m += basis_map.matrix() * *coef;
    }
    let residual = (&b - &a * &x).norm();
    let threshold = T::lit(ACCEPT_TOL) * (T::one() + ric.norm());
    Ok(SolitonFit {
        kind,
        c: x[0],
        derivation: LinearMap::new(dec, m)?,
        residual,
        threshold,
        accepted: residual <= threshold,
    })
}

/// Minimizes `|Ric - cI - D_p|` over `c` and derivations with `D k ⊂ k`.
pub fn algebraic_soliton_fit<T: Scalar>(mu: &LieBracket<T>) -> Result<SolitonFit<T>> {
    fit(mu, DerivationConstraint::KToK, FitKind::Algebraic)
}

/// Minimizes `|Ric - cI - (D_p + D_p^t)/2|` over `c` and derivations with `D k = 0`.
pub fn semi_algebraic_fit<T: Scalar>(mu: &LieBracket<T>) -> Result<SolitonFit<T>> {
    fit(mu, DerivationConstraint::KZero, FitKind::SemiAlgebraic)
}

/// Semi-algebraic fit restricted to block derivations `[[0, 0], [0, D_p]]`.
pub fn semi_algebraic_block_fit<T: Scalar>(mu: &LieBracket<T>) -> Result<SolitonFit<T>> {
    fit(mu, DerivationConstraint::KZeroPBlock, FitKind::SemiAlgebraic)
}

/// Einstein constant `c = tr(Ric)/n` when `|Ric - cI| <= ACCEPT_TOL (1 + |Ric|)`.
pub fn einstein_constant<T: Scalar>(mu: &LieBracket<T>) -> Result<Option<T>> {
    let ric = ricci_operator(mu)?.ric;
    let n = ric.nrows();
    if n == 0 {
        return Ok(Some(T::zero()));
    }
    let c = ric.trace() / T::from_usize(n).expect("dimension fits");
    let resid = (&ric - DMatrix::identity(n, n) * c).norm();
    Ok((resid <= T::lit(ACCEPT_TOL) * (T::one() + ric.norm())).then_some(c))
}

/// Minimizer `r*` of `|bracket_flow_field(mu, r)|` and the minimum.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(bound = "")]
pub struct FixedPointResidual<T: Scalar> {
    #[serde(serialize_with = "crate::serde_util::scalar")]
    pub r_star: T,
    #[serde(serialize_with = "crate::serde_util::scalar")]
    pub residual: T,
}

/// The field is affine in `r`, `f0 + r g`, so `r* = -<f0, g>/<g, g>`
/// (`r* = 0` when `g = 0`).
pub fn fixed_point_residual<T: Scalar>(mu: &LieBracket<T>) -> Result<FixedPointResidual<T>> {
    ricci_operator(mu)?;
    let parts = crate::flow::field::field_parts(mu);
    let dot = |a: &[T], b: &[T]| a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y);
    let gg = dot(&parts.g, &parts.g);
    let r_star = if gg > T::zero() { -dot(&parts.f0, &parts.g) / gg } else { T::zero() };
    let sq = parts.f0.iter().zip(&parts.g).fold(T::zero(), |acc, (&f, &g)| {
        let v = f + r_star * g;
        acc + v * v
    });
    Ok(FixedPointResidual { r_star, residual: (T::lit(2.0) * sq).sqrt() })
}

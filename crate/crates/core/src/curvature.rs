//! Ricci operator and scalar curvature of the homogeneous space attached to
//! a bracket, in the fixed orthonormal basis of `p`.
//!
//! `Ric = M - B/2 - S(ad H |_p)` where
//!
//! * `<M X, Y> = -1/2 sum <mu_p(X, X_i), X_j><mu_p(Y, X_i), X_j>
//!              + 1/4 sum <mu_p(X_i, X_j), X><mu_p(X_i, X_j), Y>`,
//! * `<B X, Y> = tr(ad X o ad Y)` computed on all of `g`,
//! * `<H, X> = tr ad X` (mean curvature vector),
//! * `S(A) = (A + A^t) / 2`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{check_membership, LieBracket, MembershipTolerances};
use crate::scalar::Scalar;

/// Ricci operator on `p` together with its constituents.
#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct RicciData<T: Scalar> {
    #[serde(serialize_with = "crate::serde_util::matrix")]
    pub ric: DMatrix<T>,
    #[serde(serialize_with = "crate::serde_util::matrix")]
    pub m_term: DMatrix<T>,
    #[serde(serialize_with = "crate::serde_util::matrix")]
    pub killing_p: DMatrix<T>,
    #[serde(serialize_with = "crate::serde_util::vector")]
    pub mean_curvature: DVector<T>,
    #[serde(serialize_with = "crate::serde_util::scalar")]
    pub scalar: T,
    #[serde(serialize_with = "crate::serde_util::scalar")]
    pub ric_sq_trace: T,
}

impl<T: Scalar> RicciData<T> {
    /// `Ric = 0` up to `tol`; homogeneous spaces are flat exactly when Ricci flat.
    pub fn is_flat(&self, tol: T) -> bool {
        self.ric.amax() <= tol
    }

    /// Frobenius norm of the Ricci operator.
    pub fn ric_norm(&self) -> T {
        self.ric.norm()
    }
}

/// Ricci operator after checking conditions (h1) and (h3).
///
/// Tolerances are scaled with the size of the bracket so that large brackets
/// along blow-up trajectories are judged relative to their magnitude.
pub fn ricci_operator<T: Scalar>(mu: &LieBracket<T>) -> Result<RicciData<T>> {
    let s = T::one().max(mu.norm());
    let base = MembershipTolerances::<T>::default();
    let tol = MembershipTolerances {
        jacobi: base.jacobi * s * s,
        structure: base.structure * s,
        skew: base.skew * s,
        faithful: base.faithful,
    };
    let report = check_membership(mu, &tol);
    if !report.curvature_ready() {
        return Err(Error::Membership(report.failures().join(", ")));
    }
    Ok(ricci_operator_unchecked(mu))
}

/// Ricci formula evaluated without membership checks.
pub fn ricci_operator_unchecked<T: Scalar>(mu: &LieBracket<T>) -> RicciData<T> {
    let dec = mu.decomposition();
    let (q, n, d) = (dec.q(), dec.n(), dec.dim());
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);

    let mut m = DMatrix::zeros(n, n);
    for x in 0..n {
        for y in x..n {
            let mut first = T::zero();
            let mut second = T::zero();
            for a in 0..n {
                for b in 0..n {
                    first += mu.get(q + x, q + a, q + b) * mu.get(q + y, q + a, q + b);
                    second += mu.get(q + a, q + b, q + x) * mu.get(q + a, q + b, q + y);
                }
            }
            let v = -half * first + quarter * second;
            m[(x, y)] = v;
            m[(y, x)] = v;
        }
    }

    let mut killing_p = DMatrix::zeros(n, n);
    for x in 0..n {
        for y in x..n {
            let mut s = T::zero();
            for u in 0..d {
                for v in 0..d {
                    s += mu.get(q + x, v, u) * mu.get(q + y, u, v);
                }
            }
            killing_p[(x, y)] = s;
            killing_p[(y, x)] = s;
        }
    }

    let h = DVector::from_fn(n, |x, _| (0..d).fold(T::zero(), |acc, u| acc + mu.get(q + x, u, u)));
    // proj_p o ad H |_p
    let ad_h = DMatrix::from_fn(n, n, |r, c| {
        (0..n).fold(T::zero(), |acc, x| acc + h[x] * mu.get(q + x, q + c, q + r))
    });
    let s_ad_h = crate::linalg::sym(&ad_h);

    let ric = &m - &killing_p * half - s_ad_h;
    let scalar = ric.trace();
    let ric_sq_trace = (&ric * &ric).trace();
    RicciData { ric, m_term: m, killing_p, mean_curvature: h, scalar, ric_sq_trace }
}

/// Scalar curvature `R = tr Ric`.
pub fn scalar_curvature<T: Scalar>(mu: &LieBracket<T>) -> Result<T> {
    Ok(ricci_operator(mu)?.scalar)
}

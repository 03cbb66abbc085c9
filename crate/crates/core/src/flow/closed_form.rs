//! Explicit flows of semi-algebraic solitons.

use nalgebra::DMatrix;

use crate::curvature::ricci_operator;
use crate::error::{Error, Result};
use crate::lie::{group_action, pi_action, LieBracket, LinearMap};
use crate::linalg::{block_diag_identity, expm, skew, sym};
use crate::scalar::Scalar;

/// Which closed form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormKind {
    /// `nu(t) = (-2ct+1)^{-1/2} . (diag(I, e^{sA} e^{-s D_p}) . mu0)`.
    Unnormalized,
    /// `mu(t) = diag(I, e^{tA} e^{-t D_p}) . mu0`, for any scaling and isometry
    /// invariant normalization.
    Normalized,
    /// `mu(t) = diag(I, e^{tA}) . mu0`, valid when `D p ⊂ p`.
    NormalizedDpInP,
}

/// Relative tolerance of the certificate checks.
pub const CERTIFICATE_TOL: f64 = 1e-8;

/// Checks that `(c, D)` certifies `mu0` as a semi-algebraic soliton:
/// `Ric = cI + (D_p + D_p^t)/2`, `D` a derivation and `D k = 0`.
pub fn certify_semi_algebraic<T: Scalar>(mu0: &LieBracket<T>, c: T, d: &LinearMap<T>) -> Result<()> {
    let dec = mu0.decomposition();
    let n = dec.n();
    let tol = T::lit(CERTIFICATE_TOL);
    let ric = ricci_operator(mu0)?.ric;
    let dp = d.p_block();
    let resid = (&ric - DMatrix::identity(n, n) * c - sym(&dp)).norm();
    let thr = tol * (T::one() + ric.norm());
    if resid > thr {
        return Err(Error::NotCertified { residual: resid.as_f64(), threshold: thr.as_f64() });
    }
    let der = pi_action(d.matrix(), mu0)?.norm();
    let thr = tol * (T::one() + mu0.norm() * d.matrix().norm());
    if der > thr {
        return Err(Error::NotCertified { residual: der.as_f64(), threshold: thr.as_f64() });
    }
    if !d.vanishes_on_k(tol) {
        return Err(Error::ClosedForm("the derivation must vanish on k".into()));
    }
    Ok(())
}

/// `s(t) = -ln(-2ct+1) / (2c)`, and `s(t) = t` for `c = 0` (its limit).
pub fn soliton_time<T: Scalar>(c: T, t: T) -> T {
    if c == T::zero() {
        t
    } else {
        -(-T::lit(2.0) * c * t).ln_1p() / (T::lit(2.0) * c)
    }
}

/// Evaluates the closed-form solution at time `t` after certifying `(c, D)`.
pub fn closed_form_semi_algebraic<T: Scalar>(
    mu0: &LieBracket<T>,
    c: T,
    d: &LinearMap<T>,
    t: T,
    kind: ClosedFormKind,
) -> Result<LieBracket<T>> {
    certify_semi_algebraic(mu0, c, d)?;
    let q = mu0.decomposition().q();
    let dp = d.p_block();
    let a = skew(&dp);
    match kind {
        ClosedFormKind::Unnormalized => {
            let base = -T::lit(2.0) * c * t + T::one();
            if base <= T::zero() {
                return Err(Error::ClosedForm(format!("-2ct + 1 = {} is not positive", base.as_f64())));
            }
            let s = soliton_time(c, t);
            let h = expm(&(&a * s)) * expm(&(&dp * -s));
            let moved = group_action(&block_diag_identity(q, &h), mu0)?;
            moved.rescale(base.sqrt().recip())
        }
        ClosedFormKind::Normalized => {
            let h = expm(&(&a * t)) * expm(&(&dp * -t));
            group_action(&block_diag_identity(q, &h), mu0)
        }
        ClosedFormKind::NormalizedDpInP => {
            if !d.preserves_p(T::lit(CERTIFICATE_TOL)) {
                return Err(Error::ClosedForm("this form needs D p ⊂ p".into()));
            }
            group_action(&block_diag_identity(q, &expm(&(&a * t))), mu0)
        }
    }
}

use nalgebra::DMatrix;

use super::{check_membership, group_action, LieBracket, LinearMap, MembershipTolerances};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Killing form `B[i][j] = tr(ad e_i o ad e_j)` over all of `g`.
pub fn killing_form<T: Scalar>(mu: &LieBracket<T>) -> DMatrix<T> {
    let d = mu.dim();
    let mut b = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let mut s = T::zero();
            for u in 0..d {
                for v in 0..d {
                    // (ad_i)[u][v] = c[i][v][u]
                    s += mu.get(i, v, u) * mu.get(j, u, v);
                }
            }
            b[(i, j)] = s;
            b[(j, i)] = s;
        }
    }
    b
}

/// Largest `|ad Z|_k + (ad Z|_k)^t|` over the `k`-basis: zero when the declared
/// inner product on `k` is `ad k`-invariant.
pub fn ad_k_invariant_inner_product_defect<T: Scalar>(mu: &LieBracket<T>) -> T {
    let dec = mu.decomposition();
    let q = dec.q();
    let mut worst = T::zero();
    for a in 0..q {
        let m = DMatrix::from_fn(q, q, |r, c| mu.get(a, c, r));
        let s = crate::linalg::skew_defect(&m);
        if s > worst {
            worst = s;
        }
    }
    worst
}

/// Moves `p` onto the Killing-orthogonal complement of `k`.
///
/// Returns `(h . mu, h)` where `h = [[I, -phi], [0, I]]` and
/// `phi = -B_kk^{-1} B_kp`, so that the returned bracket satisfies
/// `B(k, p) = 0` in the standard basis.
pub fn canonicalize_reductive<T: Scalar>(mu: &LieBracket<T>) -> Result<(LieBracket<T>, LinearMap<T>)> {
    let dec = mu.decomposition();
    let (q, n) = (dec.q(), dec.n());
    if q == 0 {
        return Ok((mu.clone(), LinearMap::identity(dec)));
    }
    let report = check_membership(mu, &MembershipTolerances::default());
    if !(report.jacobi_ok && report.k_subalgebra && report.k_action_on_p) {
        return Err(Error::Membership(report.failures().join(", ")));
    }
    let b = killing_form(mu);
    let b_kk = b.view((0, 0), (q, q)).into_owned();
    let b_kp = b.view((0, q), (q, n)).into_owned();
    let ev = crate::linalg::sym_eigenvalues(&b_kk);
    let largest = ev.last().copied().unwrap_or_else(T::zero);
    let scale = b.amax().max(T::one());
    if !(largest < -T::lit(1e-12) * scale) {
        return Err(Error::IsotropyNotCompact { largest: largest.as_f64() });
    }
    if b_kp.amax() <= T::lit(1e-14) * scale {
        return Ok((mu.clone(), LinearMap::identity(dec)));
    }
    let phi = -b_kk.clone().try_inverse().ok_or(Error::IsotropyNotCompact { largest: largest.as_f64() })? * b_kp;
    let mut h = DMatrix::identity(q + n, q + n);
    h.view_mut((0, q), (q, n)).copy_from(&(-phi));
    let moved = group_action(&h, mu)?;
    Ok((moved, LinearMap::new(dec, h)?))
}

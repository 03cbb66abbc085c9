use nalgebra::DMatrix;

use super::LieBracket;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check_square<T: Scalar>(a: &DMatrix<T>, d: usize) -> Result<()> {
    if a.nrows() != d || a.ncols() != d {
        return Err(Error::DimensionMismatch { expected: d, got: a.nrows().max(a.ncols()) });
    }
    Ok(())
}

/// Infinitesimal action `pi(A) mu = A mu(., .) - mu(A ., .) - mu(., A .)`.
///
/// The result is an element of the space of skew brackets and need not
/// satisfy the Jacobi identity.
pub fn pi_action<T: Scalar>(a: &DMatrix<T>, mu: &LieBracket<T>) -> Result<LieBracket<T>> {
    let d = mu.dim();
    check_square(a, d)?;
    let mut out = LieBracket::zero(mu.decomposition());
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..d {
                let mut s = T::zero();
                for l in 0..d {
                    s += a[(k, l)] * mu.get(i, j, l);
                    s -= a[(l, i)] * mu.get(l, j, k);
                    s -= a[(l, j)] * mu.get(i, l, k);
                }
                out.set(i, j, k, s);
            }
        }
    }
    Ok(out)
}

/// Group action `h . mu = h mu(h^{-1} ., h^{-1} .)`.
pub fn group_action<T: Scalar>(h: &DMatrix<T>, mu: &LieBracket<T>) -> Result<LieBracket<T>> {
    let d = mu.dim();
    check_square(h, d)?;
    let sv = crate::linalg::singular_values(h);
    let smax = sv.first().copied().unwrap_or_else(T::zero);
    let smin = sv.last().copied().unwrap_or_else(T::zero);
    if !(smin > T::lit(1e-14) * smax) {
        return Err(Error::SingularMap { sigma_min: smin.as_f64() });
    }
    let hinv = h.clone().try_inverse().ok_or(Error::SingularMap { sigma_min: smin.as_f64() })?;

    let idx = |i: usize, j: usize, k: usize| (i * d + j) * d + k;
    // t1[a][b][k] = sum_l h[k][l] c[a][b][l]
    let mut t1 = vec![T::zero(); d * d * d];
    for a in 0..d {
        for b in 0..d {
            for k in 0..d {
                let mut s = T::zero();
                for l in 0..d {
                    s += h[(k, l)] * mu.get(a, b, l);
                }
                t1[idx(a, b, k)] = s;
            }
        }
    }
    // t2[i][b][k] = sum_a hinv[a][i] t1[a][b][k]
    let mut t2 = vec![T::zero(); d * d * d];
    for i in 0..d {
        for b in 0..d {
            for k in 0..d {
                let mut s = T::zero();
                for a in 0..d {
                    s += hinv[(a, i)] * t1[idx(a, b, k)];
                }
                t2[idx(i, b, k)] = s;
            }
        }
    }
    // t3[i][j][k] = sum_b hinv[b][j] t2[i][b][k]
    let mut t3 = vec![T::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut s = T::zero();
                for b in 0..d {
                    s += hinv[(b, j)] * t2[idx(i, b, k)];
                }
                t3[idx(i, j, k)] = s;
            }
        }
    }
    LieBracket::from_coeffs_antisymmetrized(mu.decomposition(), t3)
}

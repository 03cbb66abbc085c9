use nalgebra::DMatrix;

use super::{LieBracket, LinearMap};
use crate::linalg::{null_space, RANK_TOL};
use crate::scalar::Scalar;

/// Matrix subspace in which derivations are searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivationConstraint {
    /// All of `gl(q + n)`.
    Full,
    /// Maps with `A(k) ⊂ k`.
    KToK,
    /// Maps with `A(k) = 0`; `p` may leak into `k`.
    KZero,
    /// Block form `[[0, 0], [0, D_p]]`.
    KZeroPBlock,
}

impl DerivationConstraint {
    fn allows(self, q: usize, row: usize, col: usize) -> bool {
        let row_k = row < q;
        let col_k = col < q;
        match self {
            Self::Full => true,
            Self::KToK => !(col_k && !row_k),
            Self::KZero => !col_k,
            Self::KZeroPBlock => !col_k && !row_k,
        }
    }
}

/// Frobenius-orthonormal basis of `{A in constraint : pi(A) mu = 0}`.
pub fn derivation_space<T: Scalar>(mu: &LieBracket<T>, constraint: DerivationConstraint) -> Vec<LinearMap<T>> {
    derivation_space_with_tol(mu, constraint, T::lit(RANK_TOL))
}

pub(crate) fn derivation_space_with_tol<T: Scalar>(
    mu: &LieBracket<T>,
    constraint: DerivationConstraint,
    rel_tol: T,
) -> Vec<LinearMap<T>> {
    let dec = mu.decomposition();
    let d = dec.dim();
    let q = dec.q();
    let free: Vec<(usize, usize)> =
        (0..d).flat_map(|r| (0..d).map(move |c| (r, c))).filter(|&(r, c)| constraint.allows(q, r, c)).collect();
    if free.is_empty() {
        return Vec::new();
    }

    // Row (i<j, k) of pi(E_rc) mu for each elementary matrix E_rc.
    let rows = d * d.saturating_sub(1) / 2 * d;
    let mut system = DMatrix::<T>::zeros(rows.max(1), free.len());
    for (col, &(r, c)) in free.iter().enumerate() {
        let mut row = 0;
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    // E_rc mu(e_i,e_j) - mu(E_rc e_i, e_j) - mu(e_i, E_rc e_j)
                    let mut s = T::zero();
                    if k == r {
                        s += mu.get(i, j, c);
                    }
                    if i == c {
                        s -= mu.get(r, j, k);
                    }
                    if j == c {
                        s -= mu.get(i, r, k);
                    }
                    system[(row, col)] = s;
                    row += 1;
                }
            }
        }
    }

    null_space(&system, rel_tol)
        .into_iter()
        .map(|v| {
            let mut m = DMatrix::zeros(d, d);
            for (&(r, c), &x) in free.iter().zip(v.iter()) {
                m[(r, c)] = x;
            }
            LinearMap::new(dec, m).expect("square by construction")
        })
        .collect()
}

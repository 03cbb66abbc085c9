//! Thin wrappers over `nalgebra` decompositions: null spaces, minimum-norm
//! least squares and a few matrix utilities used across modules.

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};

use crate::scalar::Scalar;

/// Default relative threshold below which a singular value counts as zero.
pub const RANK_TOL: f64 = 1e-10;

/// SVD of a matrix padded with zero rows so that the full right singular
/// basis is always available.
fn full_svd<T: Scalar>(a: &DMatrix<T>) -> (Vec<T>, DMatrix<T>) {
    let (m, n) = a.shape();
    let padded = if m < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("requested V^T");
    (svd.singular_values.iter().copied().collect(), v_t)
}

/// Orthonormal basis of the null space of `a`, using the relative rank
/// threshold `sigma <= rel_tol * sigma_max`.
pub fn null_space<T: Scalar>(a: &DMatrix<T>, rel_tol: T) -> Vec<DVector<T>> {
    let n = a.ncols();
    if n == 0 {
        return Vec::new();
    }
    let (sv, v_t) = full_svd(a);
    let sigma_max = sv.iter().copied().fold(T::zero(), |m, s| if s > m { s } else { m });
    let cutoff = rel_tol * sigma_max;
    sv.iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect()
}

/// Singular values of `a` in descending order.
pub fn singular_values<T: Scalar>(a: &DMatrix<T>) -> Vec<T> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    SVD::new(a.clone(), false, false).singular_values.iter().copied().collect()
}

/// Minimum-norm solution of `min |a x - b|` via the SVD pseudoinverse.
pub fn lstsq_min_norm<T: Scalar>(a: &DMatrix<T>, b: &DVector<T>, rel_tol: T) -> DVector<T> {
    let n = a.ncols();
    if n == 0 || a.nrows() == 0 {
        return DVector::zeros(n);
    }
    let svd = SVD::new(a.clone(), true, true);
    let u = svd.u.as_ref().expect("requested U");
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let sigma_max = svd.singular_values.iter().copied().fold(T::zero(), |m, s| if s > m { s } else { m });
    let cutoff = rel_tol * sigma_max;
    let mut x = DVector::zeros(n);
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > cutoff && s > T::zero() {
            let coef = u.column(i).dot(b) / s;
            x += v_t.row(i).transpose() * coef;
        }
    }
    x
}

/// Frobenius norm of `a + a^t`.
pub fn skew_defect<T: Scalar>(a: &DMatrix<T>) -> T {
    (a + a.transpose()).norm()
}

/// Symmetric part `(a + a^t) / 2`.
pub fn sym<T: Scalar>(a: &DMatrix<T>) -> DMatrix<T> {
    (a + a.transpose()) * T::lit(0.5)
}

/// Skew part `(a - a^t) / 2`.
pub fn skew<T: Scalar>(a: &DMatrix<T>) -> DMatrix<T> {
    (a - a.transpose()) * T::lit(0.5)
}

/// Commutator `ab - ba`.
pub fn commutator<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    a * b - b * a
}

/// Matrix exponential (Padé scaling and squaring from `nalgebra`).
pub fn expm<T: Scalar>(a: &DMatrix<T>) -> DMatrix<T> {
    if a.nrows() == 0 {
        return a.clone();
    }
    a.exp()
}

/// Eigenvalues of a symmetric matrix (ascending).
pub fn sym_eigenvalues<T: Scalar>(a: &DMatrix<T>) -> Vec<T> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<T> = SymmetricEigen::new(sym(a)).eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| x.partial_cmp(y).expect("NaN eigenvalue"));
    ev
}

/// Embeds an `n x n` block into the lower-right corner of a `(q+n)` identity.
pub fn block_diag_identity<T: Scalar>(q: usize, block: &DMatrix<T>) -> DMatrix<T> {
    let n = block.nrows();
    let mut h = DMatrix::identity(q + n, q + n);
    h.view_mut((q, q), (n, n)).copy_from(block);
    h
}

//! Near-recurrence of `t -> e^{tA}` for skew `A`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::lie::LinearMap;
use crate::scalar::Scalar;

/// Bound on `|A + A^t|` accepted as skew.
pub const SKEW_TOL: f64 = 1e-12;

/// Grid times `t` in `(0, t_max]` with `|e^{tA} - I|_F < epsilon`.
///
/// The grid step is `epsilon / (4 |A|_F)`, or `epsilon` when `A = 0`. For skew
/// `A` with `A^t A` having eigenvalues `w_k^2`,
/// `|e^{tA} - I|_F^2 = sum_k 4 sin^2(w_k t / 2)`.
pub fn recurrence_times<T: Scalar>(a: &LinearMap<T>, epsilon: T, t_max: T) -> Result<Vec<T>> {
    recurrence_times_matrix(a.matrix(), epsilon, t_max)
}

/// [`recurrence_times`] on a bare matrix.
pub fn recurrence_times_matrix<T: Scalar>(a: &DMatrix<T>, epsilon: T, t_max: T) -> Result<Vec<T>> {
    let defect = (a + a.transpose()).norm();
    if defect > T::lit(SKEW_TOL) {
        return Err(Error::NotSkew(defect.as_f64()));
    }
    if !(epsilon > T::zero()) || !(t_max > T::zero()) {
        return Err(Error::InvalidArgument("epsilon and t_max must be positive".into()));
    }
    let norm = a.norm();
    let step = if norm > T::zero() { epsilon / (T::lit(4.0) * norm) } else { epsilon };
    let freqs: Vec<T> = if a.nrows() == 0 {
        Vec::new()
    } else {
        SymmetricEigen::new(a.transpose() * a)
            .eigenvalues
            .iter()
            .map(|&l| l.max(T::zero()).sqrt())
            .filter(|&w| w > T::zero())
            .collect()
    };
    let eps_sq = epsilon * epsilon;
    let half = T::lit(0.5);
    let four = T::lit(4.0);
    let count = (t_max / step).floor().to_usize().unwrap_or(usize::MAX);
    Ok((1..=count)
        .map(|i| T::from_usize(i).expect("grid index") * step)
        .filter(|&t| {
            let s = freqs.iter().fold(T::zero(), |acc, &w| {
                let x = (w * t * half).sin();
                acc + four * x * x
            });
            s < eps_sq
        })
        .collect())
}

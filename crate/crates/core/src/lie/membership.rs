use serde::Serialize;

use super::LieBracket;
use crate::scalar::Scalar;

/// Frobenius norm of the Jacobiator `J(a,b,c) = mu(a,mu(b,c)) + mu(b,mu(c,a)) + mu(c,mu(a,b))`
/// over basis triples `i < j < k`.
pub fn jacobi_residual<T: Scalar>(mu: &LieBracket<T>) -> T {
    let d = mu.dim();
    let mut total = T::zero();
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                for m in 0..d {
                    let mut s = T::zero();
                    for l in 0..d {
                        s += mu.get(j, k, l) * mu.get(i, l, m);
                        s += mu.get(k, i, l) * mu.get(j, l, m);
                        s += mu.get(i, j, l) * mu.get(k, l, m);
                    }
                    total += s * s;
                }
            }
        }
    }
    total.sqrt()
}

/// Closedness of the isotropy subgroup; never decided from structure constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum H2Status {
    Unknown,
}

/// Thresholds used by [`check_membership`].
#[derive(Debug, Clone, Copy)]
pub struct MembershipTolerances<T> {
    pub jacobi: T,
    pub structure: T,
    pub skew: T,
    pub faithful: T,
}

impl<T: Scalar> Default for MembershipTolerances<T> {
    fn default() -> Self {
        let t = T::lit(1e-10);
        Self { jacobi: t, structure: t, skew: t, faithful: t }
    }
}

/// Outcome of the membership test for the space of homogeneous spaces.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub jacobi_residual: f64,
    pub jacobi_ok: bool,
    pub k_subalgebra: bool,
    pub k_action_on_p: bool,
    pub h3_skew: bool,
    pub h4_faithful: bool,
    pub h2_closed: H2Status,
    pub passed: bool,
}

impl MembershipReport {
    /// Conditions used by curvature routines: Jacobi, reductivity and skewness.
    pub fn curvature_ready(&self) -> bool {
        self.k_subalgebra && self.k_action_on_p && self.h3_skew && self.jacobi_ok
    }

    /// Human-readable list of failed conditions.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.jacobi_ok {
            out.push("jacobi");
        }
        if !self.k_subalgebra {
            out.push("k not a subalgebra");
        }
        if !self.k_action_on_p {
            out.push("mu(k, p) not in p");
        }
        if !self.h3_skew {
            out.push("ad k not skew on p");
        }
        if !self.h4_faithful {
            out.push("k does not act faithfully on p");
        }
        out
    }
}

/// Evaluates conditions (h1), (h3) and (h4); (h2) is reported as unknown.
pub fn check_membership<T: Scalar>(mu: &LieBracket<T>, tol: &MembershipTolerances<T>) -> MembershipReport {
    let dec = mu.decomposition();
    let d = dec.dim();
    let q = dec.q();
    let jac = jacobi_residual(mu);

    let mut k_sub = true;
    let mut k_on_p = true;
    for a in dec.k_indices() {
        for b in 0..d {
            for c in 0..d {
                let v = mu.get(a, b, c).abs();
                if v <= tol.structure {
                    continue;
                }
                match (dec.is_k(b), dec.is_k(c)) {
                    (true, false) => k_sub = false,
                    (false, true) => k_on_p = false,
                    _ => {}
                }
            }
        }
    }

    let h3 = dec.k_indices().all(|a| crate::linalg::skew_defect(&mu.ad_k_on_p(a)) <= tol.skew);

    let h4 = if q == 0 {
        true
    } else {
        let n = dec.n();
        // Columns are vec(ad Z_a |_p).
        let map = nalgebra::DMatrix::from_fn(n * n, q, |r, a| {
            let m = mu.ad_k_on_p(a);
            m[(r / n, r % n)]
        });
        let sv = crate::linalg::singular_values(&map);
        sv.len() == q && sv.iter().all(|&s| s > tol.faithful)
    };

    let jacobi_ok = jac <= tol.jacobi;
    MembershipReport {
        jacobi_residual: jac.as_f64(),
        jacobi_ok,
        k_subalgebra: k_sub,
        k_action_on_p: k_on_p,
        h3_skew: h3,
        h4_faithful: h4,
        h2_closed: H2Status::Unknown,
        passed: jacobi_ok && k_sub && k_on_p && h3 && h4,
    }
}

//! Ricci flow diagonality.

use nalgebra::DMatrix;
use serde::Serialize;

use super::fit::{semi_algebraic_fit, SolitonFit, ACCEPT_TOL};
use crate::error::{Error, Result};
use crate::flow::{ricci_flow_p, FlowOptions};
use crate::lie::{pi_action, LieBracket};
use crate::linalg::commutator;
use crate::scalar::Scalar;

/// Number of log-spaced samples in trajectory mode.
pub const TRAJECTORY_SAMPLES: usize = 50;
/// Commutator bound in trajectory mode.
pub const TRAJECTORY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagonalFlag {
    Yes,
    No,
    NotApplicable,
}

impl DiagonalFlag {
    fn from_bool(b: bool) -> Self {
        if b {
            Self::Yes
        } else {
            Self::No
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagonalMode<T> {
    /// Normality of `D_p` for the semi-algebraic certificate.
    Algebraic,
    /// Pairwise commuting metrics `P(t)` on `(0, t_end]`.
    Trajectory { t_end: T },
}

/// Evidence behind a diagonality verdict.
#[derive(Debug, Clone, Serialize)]
pub struct DiagonalEvidence {
    pub flag: DiagonalFlag,
    /// `|[D_p, D_p^t]|` (algebraic) or the largest `|[P_i, P_j]|` (trajectory).
    pub commutator: f64,
    /// `|[D_p, Ric]|`, algebraic mode only.
    pub ricci_commutator: Option<f64>,
    /// `D_p` normal.
    pub normal: Option<bool>,
    /// `|pi(D^t) mu|` small, so that `D^t` is a derivation too.
    pub transpose_is_derivation: Option<bool>,
    /// Metrics compared, including `P(0) = I`.
    pub samples: usize,
}

/// Algebraic-mode evidence for an accepted semi-algebraic certificate.
pub fn diagonal_from_fit<T: Scalar>(mu: &LieBracket<T>, fit: &SolitonFit<T>) -> Result<DiagonalEvidence> {
    if !fit.accepted {
        return Err(Error::NotCertified { residual: fit.residual.as_f64(), threshold: fit.threshold.as_f64() });
    }
    let tol = T::lit(ACCEPT_TOL);
    let dp = fit.d_p();
    let normal_defect = commutator(&dp, &dp.transpose()).norm();
    let normal = normal_defect <= tol * (T::one() + dp.norm_squared());
    let ric = crate::curvature::ricci_operator(mu)?.ric;
    let ric_comm = commutator(&dp, &ric).norm();
    let dt = fit.derivation.matrix().transpose();
    let transposed = pi_action(&dt, mu)?.norm() <= tol * (T::one() + mu.norm() * dt.norm());
    Ok(DiagonalEvidence {
        flag: DiagonalFlag::from_bool(normal),
        commutator: normal_defect.as_f64(),
        ricci_commutator: Some(ric_comm.as_f64()),
        normal: Some(normal),
        transpose_is_derivation: Some(transposed),
        samples: 0,
    })
}

/// `TRAJECTORY_SAMPLES` times log-spaced in `(0, t_end]`, ending at `t_end`.
pub fn log_spaced_times<T: Scalar>(t_end: T, samples: usize) -> Vec<T> {
    let decades = T::lit(6.0);
    let lo = t_end * T::lit(10.0).powf(-decades);
    let m = samples.max(2) - 1;
    (0..=m)
        .map(|i| {
            if i == m {
                t_end
            } else {
                lo * (t_end / lo).powf(T::from_usize(i).expect("small") / T::from_usize(m).expect("small"))
            }
        })
        .collect()
}

/// Largest pairwise commutator norm in a family of matrices.
pub fn max_pairwise_commutator<T: Scalar>(family: &[DMatrix<T>]) -> T {
    let mut worst = T::zero();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            worst = worst.max(commutator(&family[i], &family[j]).norm());
        }
    }
    worst
}

/// Ricci flow diagonality of `mu`.
///
/// Algebraic mode needs an accepted semi-algebraic fit; trajectory mode
/// integrates the metric flow and compares the sampled `P(t)`, with `P(0) = I`
/// commuting with everything.
pub fn ricci_flow_diagonal_check<T: Scalar>(mu: &LieBracket<T>, mode: DiagonalMode<T>) -> Result<DiagonalEvidence> {
    match mode {
        DiagonalMode::Algebraic => diagonal_from_fit(mu, &semi_algebraic_fit(mu)?),
        DiagonalMode::Trajectory { t_end } => {
            if !(t_end > T::zero()) {
                return Err(Error::InvalidArgument(format!("t_end must be positive, got {}", t_end.as_f64())));
            }
            let times = log_spaced_times(t_end, TRAJECTORY_SAMPLES);
            let opts = FlowOptions { sample_times: Some(times), ..FlowOptions::default() };
            let traj = ricci_flow_p(mu, t_end, &opts)?;
            if traj.step_floor {
                let t = traj.times.last().map_or(0.0, |t| t.as_f64());
                return Err(Error::Integration(format!("step size underflow at t = {t}")));
            }
            let worst = max_pairwise_commutator(&traj.p);
            Ok(DiagonalEvidence {
                flag: DiagonalFlag::from_bool(worst <= T::lit(TRAJECTORY_TOL)),
                commutator: worst.as_f64(),
                ricci_commutator: None,
                normal: None,
                transpose_is_derivation: None,
                samples: traj.p.len(),
            })
        }
    }
}

//! Ricci flow on inner products, `P' = -2 P Ric(<P., .>)`, and the harness
//! comparing it with the bracket flow and its gauge.

use nalgebra::DMatrix;
use serde::Serialize;

use super::field::NormalizationPolicy;
use super::integrate::{integrate, require_member, FlowOptions};
use super::ode::{self, Control, OdeStatus, StepInfo};
use crate::curvature::ricci_operator_unchecked;
use crate::error::{Error, Result};
use crate::lie::{group_action, LieBracket};
use crate::linalg::block_diag_identity;
use crate::scalar::Scalar;

/// Samples of `P(t)`, the matrix of the evolving inner product on `p`.
#[derive(Debug, Clone)]
pub struct MetricTrajectory<T: Scalar> {
    pub times: Vec<T>,
    pub p: Vec<DMatrix<T>>,
    /// True when the run stopped at the step floor before `t_end`.
    pub step_floor: bool,
}

/// `h` with `h^t h = P`, from the Cholesky factor `P = L L^t`.
fn gauge_from_metric<T: Scalar>(p: &DMatrix<T>) -> Option<DMatrix<T>> {
    nalgebra::Cholesky::new(p.clone()).map(|c| c.l().transpose())
}

/// Integrates the unnormalized Ricci flow of inner products on the fixed
/// Lie algebra `mu0`, starting at `P(0) = I`.
///
/// `Ric(<P., .>) = h^{-1} Ric_{h.mu0} h` for any `h` with `h^t h = P`, so the
/// right-hand side is `-2 h^t Ric_{h.mu0} h`.
pub fn ricci_flow_p<T: Scalar>(mu0: &LieBracket<T>, t_end: T, opts: &FlowOptions<T>) -> Result<MetricTrajectory<T>> {
    require_member(mu0)?;
    let dec = mu0.decomposition();
    let (q, n) = (dec.q(), dec.n());
    let to_mat = |y: &[T]| DMatrix::from_row_slice(n, n, y);

    let mut rhs = |y: &[T]| -> Result<Vec<T>> {
        let p = crate::linalg::sym(&to_mat(y));
        let h = gauge_from_metric(&p).ok_or(Error::NotPositiveDefinite { t: f64::NAN })?;
        let moved = group_action(&block_diag_identity(q, &h), mu0)?;
        let ric = ricci_operator_unchecked(&moved).ric;
        let dp = (h.transpose() * ric * &h) * T::lit(-2.0);
        let dp = crate::linalg::sym(&dp);
        Ok(dp.transpose().iter().copied().collect())
    };

    let y0: Vec<T> = DMatrix::<T>::identity(n, n).iter().copied().collect();
    let mut times = Vec::new();
    let mut ps = Vec::new();
    let mut observe = |info: StepInfo<'_, T>| -> Result<Control> {
        if info.output && times.last().is_none_or(|&t| t != info.t) {
            times.push(info.t);
            ps.push(to_mat(info.y));
        }
        Ok(Control::Continue)
    };
    let status = ode::solve(&mut rhs, T::zero(), y0, t_end, &opts.ode, opts.sample_times.as_deref(), None, &mut observe);
    // The field cannot see `t`; report the last recorded time instead.
    let status = match status {
        Ok(s) => s,
        Err(Error::NotPositiveDefinite { .. }) => {
            return Err(Error::NotPositiveDefinite { t: times.last().map_or(0.0, |t| t.as_f64()) })
        }
        Err(e) => return Err(e),
    };
    Ok(MetricTrajectory { times, p: ps, step_floor: status == OdeStatus::StepFloor })
}

/// Discrepancies between the three presentations of the Ricci flow.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    /// `sup |mu(t) - h~(t) . mu0|`.
    pub bracket_discrepancy: f64,
    /// `sup |P(t) - h(t)^t h(t)|` (Frobenius).
    pub metric_discrepancy: f64,
    pub samples: usize,
}

/// Runs the bracket flow with gauge and the inner product flow on a common
/// grid of `samples` points in `(0, t_end]` and compares them.
pub fn equivalence_check<T: Scalar>(mu0: &LieBracket<T>, t_end: T, samples: usize) -> Result<EquivalenceReport> {
    let q = mu0.decomposition().q();
    let m = samples.max(1);
    let grid: Vec<T> = (1..=m).map(|i| t_end * T::from_usize(i).expect("usize") / T::from_usize(m).expect("usize")).collect();
    let opts = FlowOptions { with_gauge: true, convergence: None, sample_times: Some(grid.clone()), ..FlowOptions::default() };
    let tr = integrate(mu0, NormalizationPolicy::Unnormalized, t_end, &opts)?;
    let metric = ricci_flow_p(mu0, t_end, &opts)?;

    let mut bracket_disc = T::zero();
    let mut metric_disc = T::zero();
    let mut count = 0;
    for (t, p) in metric.times.iter().zip(&metric.p) {
        let Some(state) = tr.at(*t) else { continue };
        let h = state.h.as_ref().expect("gauge requested");
        let moved = group_action(&block_diag_identity(q, h), mu0)?;
        bracket_disc = bracket_disc.max(state.mu.distance(&moved));
        metric_disc = metric_disc.max((p - h.transpose() * h).norm());
        count += 1;
    }
    Ok(EquivalenceReport {
        bracket_discrepancy: bracket_disc.as_f64(),
        metric_discrepancy: metric_disc.as_f64(),
        samples: count,
    })
}

//! Integration of the normalized bracket flow together with `c`, `tau` and
//! the gauge `h`.

use std::io::Write;

use nalgebra::DMatrix;
use serde::Serialize;

use super::field::{field_parts, r_from_parts, NormalizationPolicy};
use super::ode::{self, Control, OdeOptions, OdeStatus, StepInfo};
use crate::curvature::ricci_operator_unchecked;
use crate::error::{Error, Result};
use crate::lie::{check_membership, jacobi_residual, LieBracket, MembershipTolerances};
use crate::scalar::Scalar;

/// Early-termination test on the field norm and the spread of the last samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergence<T> {
    pub field_tol: T,
    pub cauchy_tol: T,
    pub tail: usize,
}

impl<T: Scalar> Default for Convergence<T> {
    fn default() -> Self {
        Self { field_tol: T::lit(1e-10), cauchy_tol: T::lit(1e-8), tail: 10 }
    }
}

/// Options of [`integrate`].
#[derive(Debug, Clone, PartialEq)]
pub struct FlowOptions<T> {
    pub ode: OdeOptions<T>,
    /// Stop once `|mu|` exceeds this value.
    pub blow_up: T,
    /// `None` disables convergence detection.
    pub convergence: Option<Convergence<T>>,
    /// Also integrate `h' = -(Ric + rI) h` with `h(0) = I`.
    pub with_gauge: bool,
    /// Record only these times (plus the start and the final state).
    pub sample_times: Option<Vec<T>>,
    /// Stop when the reparameterized time `tau` reaches this value.
    pub stop_at_tau: Option<T>,
}

impl<T: Scalar> Default for FlowOptions<T> {
    fn default() -> Self {
        Self {
            ode: OdeOptions::default(),
            blow_up: T::lit(1e8),
            convergence: Some(Convergence::default()),
            with_gauge: false,
            sample_times: None,
            stop_at_tau: None,
        }
    }
}

/// Why an integration ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    ReachedTEnd,
    BlowUp,
    Converged,
    StepFloor,
    ReachedTau,
}

/// One recorded point of a trajectory.
#[derive(Debug, Clone)]
pub struct FlowState<T: Scalar> {
    pub t: T,
    pub mu: LieBracket<T>,
    /// Cumulative rescaling, `c' = r c`.
    pub c: T,
    /// Reparameterized time, `tau' = c^2`.
    pub tau: T,
    /// Normalizing function at this state.
    pub r: T,
    /// Gauge on `p` when requested.
    pub h: Option<DMatrix<T>>,
    /// `h^t h`, the inner product presentation.
    pub p: Option<DMatrix<T>>,
}

/// Time-ordered states of one run.
#[derive(Debug, Clone)]
pub struct FlowTrajectory<T: Scalar> {
    pub policy: NormalizationPolicy<T>,
    pub states: Vec<FlowState<T>>,
    pub termination: Termination,
}

impl<T: Scalar> FlowTrajectory<T> {
    pub fn last(&self) -> &FlowState<T> {
        self.states.last().expect("trajectories hold the initial state")
    }

    pub fn times(&self) -> Vec<T> {
        self.states.iter().map(|s| s.t).collect()
    }

    /// State recorded at exactly `t`, if any.
    pub fn at(&self, t: T) -> Option<&FlowState<T>> {
        self.states.iter().find(|s| s.t == t)
    }

    /// Writes the trajectory as CSV.
    ///
    /// Columns: `t, tau, c, R, ric_norm, mu_norm_k, mu_norm_p, jacobi_residual`,
    /// then `mu_i_j_k` for every `i < j` and every `k`, in index order.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let Some(first) = self.states.first() else {
            return Ok(());
        };
        let dec = first.mu.decomposition();
        let d = dec.dim();
        let mut keys = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    keys.push((i, j, k));
                }
            }
        }
        let mut header: Vec<String> =
            ["t", "tau", "c", "R", "ric_norm", "mu_norm_k", "mu_norm_p", "jacobi_residual"].iter().map(|s| s.to_string()).collect();
        header.extend(keys.iter().map(|(i, j, k)| format!("mu_{i}_{j}_{k}")));
        wr.write_record(&header)?;
        for s in &self.states {
            let ric = ricci_operator_unchecked(&s.mu);
            let b = s.mu.bracket_norm();
            let mut row = vec![
                s.t.as_f64(),
                s.tau.as_f64(),
                s.c.as_f64(),
                ric.scalar.as_f64(),
                ric.ric_norm().as_f64(),
                b.mu_k_sq.sqrt().as_f64(),
                b.mu_p_sq.sqrt().as_f64(),
                jacobi_residual(&s.mu).as_f64(),
            ];
            row.extend(keys.iter().map(|&(i, j, k)| s.mu.get(i, j, k).as_f64()));
            wr.write_record(row.iter().map(|x| x.to_string()))?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// State vector layout: `p x p` slots, then `c`, `tau`, then `h` (row-major).
struct Layout {
    slots: usize,
    n: usize,
    gauge: bool,
}

impl Layout {
    fn len(&self) -> usize {
        self.slots + 2 + if self.gauge { self.n * self.n } else { 0 }
    }
    fn c(&self) -> usize {
        self.slots
    }
    fn tau(&self) -> usize {
        self.slots + 1
    }
    fn h(&self) -> usize {
        self.slots + 2
    }
}

/// Membership test applied to initial data: (h1), (h3), (h4).
pub(crate) fn require_member<T: Scalar>(mu: &LieBracket<T>) -> Result<()> {
    let s = T::one().max(mu.norm());
    let base = MembershipTolerances::<T>::default();
    let tol = MembershipTolerances {
        jacobi: base.jacobi * s * s,
        structure: base.structure * s,
        skew: base.skew * s,
        faithful: base.faithful,
    };
    let report = check_membership(mu, &tol);
    if report.passed {
        Ok(())
    } else {
        Err(Error::Membership(report.failures().join(", ")))
    }
}

/// Integrates the bracket flow with normalization `policy` from `mu0` at
/// `t = 0` to `t_end` (negative for the backward flow).
///
/// `mu|_{k x g}` is never touched: only the `p x p` slots are state variables.
pub fn integrate<T: Scalar>(
    mu0: &LieBracket<T>,
    policy: NormalizationPolicy<T>,
    t_end: T,
    opts: &FlowOptions<T>,
) -> Result<FlowTrajectory<T>> {
    require_member(mu0)?;
    let dec = mu0.decomposition();
    let n = dec.n();
    let lay = Layout { slots: dec.pp_slots().len(), n, gauge: opts.with_gauge };

    let mut y0 = mu0.pp_values();
    y0.push(T::one());
    y0.push(T::zero());
    if lay.gauge {
        for r in 0..n {
            for c in 0..n {
                y0.push(if r == c { T::one() } else { T::zero() });
            }
        }
    }
    debug_assert_eq!(y0.len(), lay.len());

    let rebuild = |y: &[T]| -> LieBracket<T> { mu0.with_pp_values(&y[..lay.slots]).expect("slot count") };
    let gauge_of = |y: &[T]| -> DMatrix<T> { DMatrix::from_row_slice(n, n, &y[lay.h()..lay.h() + n * n]) };

    let mut rhs = |y: &[T]| -> Result<Vec<T>> {
        let mu = rebuild(y);
        let parts = field_parts(&mu);
        let r = r_from_parts(&policy, &mu, &parts)?;
        let mut dy: Vec<T> = parts.f0.iter().zip(&parts.g).map(|(&a, &b)| a + r * b).collect();
        let c = y[lay.c()];
        dy.push(r * c);
        dy.push(c * c);
        if lay.gauge {
            let h = gauge_of(y);
            let s = &parts.ricci.ric + DMatrix::identity(n, n) * r;
            let dh = -(s * h);
            for row in 0..n {
                for col in 0..n {
                    dy.push(dh[(row, col)]);
                }
            }
        }
        Ok(dy)
    };

    let make_state = |t: T, y: &[T], mu: LieBracket<T>| -> FlowState<T> {
        let parts = field_parts(&mu);
        let r = r_from_parts(&policy, &mu, &parts).unwrap_or_else(|_| T::zero());
        let (h, p) = if lay.gauge {
            let h = gauge_of(y);
            let p = h.transpose() * &h;
            (Some(h), Some(p))
        } else {
            (None, None)
        };
        FlowState { t, mu, c: y[lay.c()], tau: y[lay.tau()], r, h, p }
    };

    let mut states: Vec<FlowState<T>> = Vec::new();
    let mut termination = None;
    let conv = opts.convergence;
    let mut observe = |info: StepInfo<'_, T>| -> Result<Control> {
        let mu = rebuild(info.y);
        let blown = !(mu.norm() <= opts.blow_up);
        let record = info.output || blown || states.is_empty();
        let strictly_new = states.last().is_none_or(|s| s.t != info.t);
        if record && strictly_new {
            states.push(make_state(info.t, info.y, mu));
        } else if blown {
            // Near a singularity `t` may no longer resolve the step; the
            // blown-up state replaces its predecessor.
            *states.last_mut().expect("initial state recorded") = make_state(info.t, info.y, mu);
        }
        if blown {
            termination = Some(Termination::BlowUp);
            return Ok(Control::Stop);
        }
        if let Some(cv) = conv {
            let fnorm = info.dy[..lay.slots].iter().fold(T::zero(), |a, &x| a + x * x);
            let fnorm = (T::lit(2.0) * fnorm).sqrt();
            if fnorm < cv.field_tol && states.len() >= cv.tail && cv.tail > 0 {
                let tail = &states[states.len() - cv.tail..];
                let mut diam = T::zero();
                for a in 0..tail.len() {
                    for b in a + 1..tail.len() {
                        diam = diam.max(tail[a].mu.distance(&tail[b].mu));
                    }
                }
                if diam < cv.cauchy_tol {
                    termination = Some(Termination::Converged);
                    return Ok(Control::Stop);
                }
            }
        }
        Ok(Control::Continue)
    };

    let tau_idx = lay.tau();
    let event_fn;
    let event: Option<ode::EventFn<'_, T>> = match opts.stop_at_tau {
        Some(target) => {
            event_fn = move |y: &[T]| y[tau_idx] - target;
            Some(&event_fn)
        }
        None => None,
    };
    let samples = opts.sample_times.as_deref();
    let status = ode::solve(&mut rhs, T::zero(), y0, t_end, &opts.ode, samples, event, &mut observe)?;
    let termination = match status {
        OdeStatus::ReachedEnd => Termination::ReachedTEnd,
        OdeStatus::StepFloor => Termination::StepFloor,
        OdeStatus::Event => Termination::ReachedTau,
        OdeStatus::Stopped => termination.expect("observer records why it stopped"),
    };
    Ok(FlowTrajectory { policy, states, termination })
}

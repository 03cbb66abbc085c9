//! ω-limit classification of a computed trajectory.

use super::field::field_norm;
use super::integrate::FlowTrajectory;
use crate::lie::LieBracket;
use crate::scalar::Scalar;

/// Thresholds used by [`omega_limit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitOptions<T> {
    pub tail: usize,
    pub cauchy_tol: T,
    pub field_tol: T,
    pub blow_up: T,
}

impl<T: Scalar> Default for LimitOptions<T> {
    fn default() -> Self {
        Self { tail: 10, cauchy_tol: T::lit(1e-8), field_tol: T::lit(1e-10), blow_up: T::lit(1e8) }
    }
}

/// Outcome of [`omega_limit`].
#[derive(Debug, Clone)]
pub enum OmegaLimit<T: Scalar> {
    Limit(LieBracket<T>),
    Divergent,
    /// No decision; carries the tail diameter and the final field norm.
    Undecided { tail_diameter: T, field_norm: T },
}

/// Declares a limit when the last `tail` states are mutually within
/// `cauchy_tol` and the normalized field at the last state is below
/// `field_tol`; divergence when `|mu|` exceeds `blow_up`.
pub fn omega_limit<T: Scalar>(trajectory: &FlowTrajectory<T>, opts: &LimitOptions<T>) -> OmegaLimit<T> {
    let states = &trajectory.states;
    let last = trajectory.last();
    if !(last.mu.norm() <= opts.blow_up) {
        return OmegaLimit::Divergent;
    }
    let fnorm = field_norm(&trajectory.policy, &last.mu).unwrap_or_else(|_| T::max_value().expect("bounded"));
    let tail = &states[states.len().saturating_sub(opts.tail.max(1))..];
    let mut diam = T::zero();
    for a in 0..tail.len() {
        for b in a + 1..tail.len() {
            diam = diam.max(tail[a].mu.distance(&tail[b].mu));
        }
    }
    if tail.len() >= opts.tail && diam < opts.cauchy_tol && fnorm < opts.field_tol {
        OmegaLimit::Limit(last.mu.clone())
    } else {
        OmegaLimit::Undecided { tail_diameter: diam, field_norm: fnorm }
    }
}

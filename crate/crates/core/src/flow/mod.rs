//! Normalized bracket flow `mu' = -pi(diag(0, Ric_mu + rI)) mu`, the
//! inner-product Ricci flow and their equivalence.

mod closed_form;
mod equivalence;
pub(crate) mod field;
mod integrate;
mod limit;
mod ode;

pub use closed_form::{certify_semi_algebraic, closed_form_semi_algebraic, soliton_time, ClosedFormKind, CERTIFICATE_TOL};
pub use equivalence::{equivalence_check, ricci_flow_p, EquivalenceReport, MetricTrajectory};
pub use field::{
    bounded_representative, bounded_scale, bracket_flow_field, field_norm, normalization_r, unit_norm_scale,
    unit_representative, NormalizationPolicy,
};
pub use integrate::{integrate, Convergence, FlowOptions, FlowState, FlowTrajectory, Termination};
pub use limit::{omega_limit, LimitOptions, OmegaLimit};
pub use ode::OdeOptions;

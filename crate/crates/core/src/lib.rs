//! Numerical laboratory for the bracket flow: the homogeneous Ricci flow
//! written as an ODE on the structure constants of a Lie algebra
//! `g = k + p`, with soliton classification, normalizations and the
//! equivalence between the bracket and inner-product presentations.
//!
//! All numerical code is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

pub mod curvature;
pub mod error;
pub mod flow;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod scenarios;
pub mod soliton;
mod serde_util;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use curvature::{ricci_operator, scalar_curvature, RicciData};
pub use lie::{Decomposition, LieBracket, LinearMap};

pub type LieBracket64 = lie::LieBracket<f64>;
pub type LieBracket32 = lie::LieBracket<f32>;
pub type LinearMap64 = lie::LinearMap<f64>;
pub type RicciData64 = curvature::RicciData<f64>;
pub type FlowTrajectory64 = flow::FlowTrajectory<f64>;
pub type FlowOptions64 = flow::FlowOptions<f64>;
pub type NormalizationPolicy64 = flow::NormalizationPolicy<f64>;
pub type SolitonReport64 = soliton::SolitonReport<f64>;
pub type SolitonFit64 = soliton::SolitonFit<f64>;

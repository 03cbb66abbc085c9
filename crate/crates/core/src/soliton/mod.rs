//! Soliton classification: Einstein, algebraic and semi-algebraic fits over
//! derivation spaces, Ricci flow diagonality and recurrence diagnostics.
//!
//! The classifier reports evidence (fits, residuals and flags). A failed fit
//! means no certificate was found in the searched derivation space.

mod diagonal;
mod fit;
mod recurrence;

pub use diagonal::{
    diagonal_from_fit, log_spaced_times, max_pairwise_commutator, ricci_flow_diagonal_check, DiagonalEvidence,
    DiagonalFlag, DiagonalMode, TRAJECTORY_SAMPLES, TRAJECTORY_TOL,
};
pub use fit::{
    algebraic_soliton_fit, einstein_constant, fixed_point_residual, semi_algebraic_block_fit, semi_algebraic_fit,
    FitKind, FixedPointResidual, SolitonFit, ACCEPT_TOL,
};
pub use recurrence::{recurrence_times, recurrence_times_matrix, SKEW_TOL};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::curvature::ricci_operator;
use crate::error::Result;
use crate::lie::io::BracketFile;
use crate::lie::LieBracket;
use crate::scalar::Scalar;

/// Strongest certificate found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Einstein,
    AlgebraicSoliton,
    SemiAlgebraicSoliton,
    None,
}

/// Unit-norm representative of the homothety class, with the soliton
/// constant rescaled to it.
#[derive(Debug, Clone, Serialize)]
pub struct Representative {
    pub bracket: BracketFile,
    pub scale: f64,
    pub c: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct SolitonReport<T: Scalar> {
    pub certificate: Certificate,
    #[serde(serialize_with = "crate::serde_util::opt_scalar")]
    pub einstein: Option<T>,
    pub algebraic: SolitonFit<T>,
    pub semi_algebraic: SolitonFit<T>,
    pub diagonal_flag: DiagonalFlag,
    pub diagonal: Option<DiagonalEvidence>,
    pub normality_flag: bool,
    pub dk_zero_check: bool,
    pub fixed_point: FixedPointResidual<T>,
    #[serde(serialize_with = "crate::serde_util::matrix")]
    pub ric: DMatrix<T>,
    #[serde(serialize_with = "crate::serde_util::scalar")]
    pub scalar_curvature: T,
    pub representative: Option<Representative>,
}

/// Runs every fit and check on `mu`.
///
/// The diagonality flag uses the algebraic criterion and is `not_applicable`
/// unless the semi-algebraic fit is accepted.
pub fn classify<T: Scalar>(mu: &LieBracket<T>) -> Result<SolitonReport<T>> {
    let ricci = ricci_operator(mu)?;
    let einstein = einstein_constant(mu)?;
    let algebraic = algebraic_soliton_fit(mu)?;
    let semi_algebraic = semi_algebraic_fit(mu)?;
    let diagonal = if semi_algebraic.accepted { Some(diagonal_from_fit(mu, &semi_algebraic)?) } else { None };
    let diagonal_flag = diagonal.as_ref().map_or(DiagonalFlag::NotApplicable, |d| d.flag);
    let normality_flag = diagonal.as_ref().and_then(|d| d.normal).unwrap_or(false);
    let dk_zero_check = algebraic.derivation.vanishes_on_k(T::lit(ACCEPT_TOL));
    let certificate = if einstein.is_some() {
        Certificate::Einstein
    } else if algebraic.accepted {
        Certificate::AlgebraicSoliton
    } else if semi_algebraic.accepted {
        Certificate::SemiAlgebraicSoliton
    } else {
        Certificate::None
    };
    let norm = mu.norm();
    let representative = (norm > T::zero()).then(|| {
        let scale = norm.recip();
        let c = einstein.or(algebraic.accepted.then_some(algebraic.c)).or(semi_algebraic.accepted.then_some(semi_algebraic.c));
        Representative {
            bracket: BracketFile::from_bracket(&mu.scaled(scale)),
            scale: scale.as_f64(),
            c: c.map(|c| (c * scale * scale).as_f64()),
        }
    });
    Ok(SolitonReport {
        certificate,
        einstein,
        algebraic,
        semi_algebraic,
        diagonal_flag,
        diagonal,
        normality_flag,
        dk_zero_check,
        fixed_point: fixed_point_residual(mu)?,
        scalar_curvature: ricci.scalar,
        ric: ricci.ric,
        representative,
    })
}

//! The bracket flow vector field and the normalizing functions `r(mu)`.

use std::fmt;
use std::str::FromStr;

use crate::curvature::{ricci_operator, ricci_operator_unchecked, RicciData};
use crate::error::{Error, Result};
use crate::lie::LieBracket;
use crate::scalar::Scalar;

/// Rule producing `r` in `mu' = -pi(diag(0, Ric + rI)) mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormalizationPolicy<T> {
    /// `r = 0`.
    Unnormalized,
    /// Constant `r`.
    FixedR(T),
    /// Keeps `|mu|_{p x p}|` constant.
    BracketNormUnit,
    /// Keeps `F = |mu_k|^{1/2} + |mu_p|` constant.
    BracketNormBounded,
    /// Keeps the scalar curvature constant: `r = -tr(Ric^2) / R`.
    ScalarConstant,
}

impl<T: Scalar> NormalizationPolicy<T> {
    pub fn cast<U: Scalar>(&self) -> NormalizationPolicy<U> {
        match *self {
            Self::Unnormalized => NormalizationPolicy::Unnormalized,
            Self::FixedR(r) => NormalizationPolicy::FixedR(U::lit(r.as_f64())),
            Self::BracketNormUnit => NormalizationPolicy::BracketNormUnit,
            Self::BracketNormBounded => NormalizationPolicy::BracketNormBounded,
            Self::ScalarConstant => NormalizationPolicy::ScalarConstant,
        }
    }
}

impl<T: Scalar> FromStr for NormalizationPolicy<T> {
    type Err = Error;

    /// Parses `none`, `fixed:R`, `norm`, `norm2` or `scalar`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::Unnormalized),
            "norm" => Ok(Self::BracketNormUnit),
            "norm2" => Ok(Self::BracketNormBounded),
            "scalar" => Ok(Self::ScalarConstant),
            _ => match s.strip_prefix("fixed:") {
                Some(r) => r
                    .trim()
                    .parse::<f64>()
                    .map(|r| Self::FixedR(T::lit(r)))
                    .map_err(|e| Error::Format(format!("bad fixed r '{r}': {e}"))),
                None => Err(Error::Format(format!("unknown normalization '{s}' (none|fixed:R|norm|norm2|scalar)"))),
            },
        }
    }
}

impl<T: Scalar> fmt::Display for NormalizationPolicy<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unnormalized => write!(f, "none"),
            Self::FixedR(r) => write!(f, "fixed:{}", r.as_f64()),
            Self::BracketNormUnit => write!(f, "norm"),
            Self::BracketNormBounded => write!(f, "norm2"),
            Self::ScalarConstant => write!(f, "scalar"),
        }
    }
}

/// Field at `r = 0` and the response to `r`, on the independent `p x p` slots:
/// `field(r) = f0 + r * g`.
#[derive(Debug, Clone)]
pub(crate) struct FieldParts<T: Scalar> {
    pub f0: Vec<T>,
    pub g: Vec<T>,
    pub ricci: RicciData<T>,
}

/// `-pi(diag(0, S)) mu` on the independent `p x p` slots, for symmetric `S` on `p`.
pub(crate) fn pp_field_for<T: Scalar>(mu: &LieBracket<T>, s: &nalgebra::DMatrix<T>) -> Vec<T> {
    let dec = mu.decomposition();
    let q = dec.q();
    let n = dec.n();
    dec.pp_slots()
        .into_iter()
        .map(|(i, j, k)| {
            let (pi, pj) = (i - q, j - q);
            let mut v = T::zero();
            if k >= q {
                for m in 0..n {
                    v += s[(k - q, m)] * mu.get(i, j, q + m);
                }
            }
            for l in 0..n {
                v -= s[(l, pi)] * mu.get(q + l, j, k);
                v -= s[(l, pj)] * mu.get(i, q + l, k);
            }
            -v
        })
        .collect()
}

pub(crate) fn field_parts<T: Scalar>(mu: &LieBracket<T>) -> FieldParts<T> {
    let ricci = ricci_operator_unchecked(mu);
    let f0 = pp_field_for(mu, &ricci.ric);
    let dec = mu.decomposition();
    let two = T::lit(2.0);
    let g = dec
        .pp_slots()
        .into_iter()
        .map(|(i, j, k)| if dec.is_k(k) { two * mu.get(i, j, k) } else { mu.get(i, j, k) })
        .collect();
    FieldParts { f0, g, ricci }
}

fn slot_dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Splits slot-vector inner products into the `k`- and `p`-target parts
/// (ordered-pair convention, hence the factor 2).
fn split_dot<T: Scalar>(mu: &LieBracket<T>, a: &[T], b: &[T]) -> (T, T) {
    let dec = mu.decomposition();
    let two = T::lit(2.0);
    let mut k = T::zero();
    let mut p = T::zero();
    for ((_, _, slot_k), (&x, &y)) in dec.pp_slots().into_iter().zip(a.iter().zip(b)) {
        if dec.is_k(slot_k) {
            k += two * x * y;
        } else {
            p += two * x * y;
        }
    }
    (k, p)
}

pub(crate) fn r_from_parts<T: Scalar>(policy: &NormalizationPolicy<T>, mu: &LieBracket<T>, parts: &FieldParts<T>) -> Result<T> {
    match *policy {
        NormalizationPolicy::Unnormalized => Ok(T::zero()),
        NormalizationPolicy::FixedR(r) => Ok(r),
        NormalizationPolicy::BracketNormUnit => {
            let pp = mu.pp_values();
            let den = slot_dot(&parts.g, &pp);
            if den == T::zero() {
                return Err(Error::Normalization("bracket norm normalization needs mu|_{p x p} != 0".into()));
            }
            Ok(-slot_dot(&parts.f0, &pp) / den)
        }
        NormalizationPolicy::BracketNormBounded => {
            let pp = mu.pp_values();
            let (k_sq, p_sq) = split_dot(mu, &pp, &pp);
            let (k_f, p_f) = split_dot(mu, &pp, &parts.f0);
            let nk = k_sq.sqrt();
            let np = p_sq.sqrt();
            let f = nk.sqrt() + np;
            if f == T::zero() {
                return Err(Error::Normalization("bounded normalization needs mu|_{p x p} != 0".into()));
            }
            let mut rhs = T::zero();
            if nk > T::zero() {
                rhs += T::lit(0.5) * k_f / (nk * nk.sqrt());
            }
            if np > T::zero() {
                rhs += p_f / np;
            }
            Ok(-rhs / f)
        }
        NormalizationPolicy::ScalarConstant => {
            let r = parts.ricci.scalar;
            if r == T::zero() {
                return Err(Error::Normalization("scalar curvature normalization needs R != 0".into()));
            }
            Ok(-parts.ricci.ric_sq_trace / r)
        }
    }
}

fn tangent_from_slots<T: Scalar>(mu: &LieBracket<T>, values: &[T]) -> LieBracket<T> {
    LieBracket::zero(mu.decomposition())
        .with_pp_values(values)
        .expect("slot count matches the decomposition")
}

/// Bracket flow velocity `d mu / dt` for a given `r`: zero on `k x g`, and
/// `-pi(diag(0, Ric + rI)) mu` on `p x p`.
pub fn bracket_flow_field<T: Scalar>(mu: &LieBracket<T>, r: T) -> Result<LieBracket<T>> {
    ricci_operator(mu)?;
    let parts = field_parts(mu);
    let v: Vec<T> = parts.f0.iter().zip(&parts.g).map(|(&a, &b)| a + r * b).collect();
    Ok(tangent_from_slots(mu, &v))
}

/// Value of the normalizing function `r` at `mu`.
pub fn normalization_r<T: Scalar>(policy: &NormalizationPolicy<T>, mu: &LieBracket<T>) -> Result<T> {
    ricci_operator(mu)?;
    r_from_parts(policy, mu, &field_parts(mu))
}

/// Norm of the normalized field at `mu` (ordered-pair convention).
pub fn field_norm<T: Scalar>(policy: &NormalizationPolicy<T>, mu: &LieBracket<T>) -> Result<T> {
    let parts = field_parts(mu);
    let r = r_from_parts(policy, mu, &parts)?;
    let s = parts.f0.iter().zip(&parts.g).fold(T::zero(), |acc, (&a, &b)| {
        let v = a + r * b;
        acc + v * v
    });
    Ok((T::lit(2.0) * s).sqrt())
}

/// Scaling `c` with `|c . mu|_{p x p}| = 1`.
pub fn unit_norm_scale<T: Scalar>(mu: &LieBracket<T>) -> Result<T> {
    let b = mu.bracket_norm();
    if b.mu_k_sq == T::zero() {
        if b.mu_p_sq == T::zero() {
            return Err(Error::Normalization("mu|_{p x p} = 0 has no unit representative".into()));
        }
        return Ok(T::one() / b.mu_p_sq.sqrt());
    }
    let disc = (b.mu_p_sq * b.mu_p_sq + T::lit(4.0) * b.mu_k_sq).sqrt();
    let c2 = (-b.mu_p_sq + disc) / (T::lit(2.0) * b.mu_k_sq);
    Ok(c2.sqrt())
}

/// Scaling `c = 1 / (|mu_k|^{1/2} + |mu_p|)`.
pub fn bounded_scale<T: Scalar>(mu: &LieBracket<T>) -> Result<T> {
    let b = mu.bracket_norm();
    let f = b.mu_k_sq.sqrt().sqrt() + b.mu_p_sq.sqrt();
    if f == T::zero() {
        return Err(Error::Normalization("mu|_{p x p} = 0 has no bounded representative".into()));
    }
    Ok(T::one() / f)
}

/// `c . mu` with `|c . mu|_{p x p}| = 1`.
pub fn unit_representative<T: Scalar>(mu: &LieBracket<T>) -> Result<LieBracket<T>> {
    mu.rescale(unit_norm_scale(mu)?)
}

/// `c . mu` with `|mu_k|^{1/2} + |mu_p| = 1`.
pub fn bounded_representative<T: Scalar>(mu: &LieBracket<T>) -> Result<LieBracket<T>> {
    mu.rescale(bounded_scale(mu)?)
}

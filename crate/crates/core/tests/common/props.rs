//! Invariants and properties of every module, each checked on seeded random
//! inputs by [`super::check`].

use bracket_flow::curvature::ricci_operator;
use bracket_flow::flow::{
    bounded_representative, bracket_flow_field, integrate, unit_representative,
    FlowOptions, NormalizationPolicy, OdeOptions, Termination,
};
use bracket_flow::lie::io::{from_json_str, to_json_string};
use bracket_flow::lie::{
    canonicalize_reductive, check_membership, derivation_space, group_action, jacobi_residual, killing_form,
    pi_action, DerivationConstraint, MembershipTolerances,
};
use bracket_flow::scenarios::{Scenario, BUILT_IN};
use bracket_flow::soliton::{
    algebraic_soliton_fit, classify, fixed_point_residual, semi_algebraic_block_fit, semi_algebraic_fit,
};
use bracket_flow::LieBracket64;
use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::Rng;

use super::{any_case, check, homogeneous_case, lie_algebra_case, near_identity, orthogonal, raw_bracket, rng, seeds, soliton_case};

pub type Property = fn(u32) -> Result<(), String>;

type Outcome = Result<(), TestCaseError>;

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn p_block_orthogonal(mu: &LieBracket64, seed: u64) -> DMatrix<f64> {
    let dec = mu.decomposition();
    let mut r = rng(seed ^ 0x5eed);
    let k = orthogonal(&mut r, dec.n());
    bracket_flow::linalg::block_diag_identity(dec.q(), &k)
}

fn k_by_g_values(mu: &LieBracket64) -> Vec<f64> {
    let d = mu.dim();
    let q = mu.decomposition().q();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i < q || j < q {
                for k in 0..d {
                    out.push(mu.get(i, j, k));
                }
            }
        }
    }
    out
}

/// Integration window well inside the existence interval: the flow's time
/// scale is `1/|mu|^2`.
fn window(mu: &LieBracket64) -> f64 {
    1.0 / (1.0 + mu.norm_sq())
}

fn no_convergence() -> FlowOptions<f64> {
    FlowOptions { convergence: None, ..FlowOptions::default() }
}

fn tight() -> FlowOptions<f64> {
    FlowOptions { ode: OdeOptions { rtol: 1e-11, atol: 1e-13, ..OdeOptions::default() }, convergence: None, ..FlowOptions::default() }
}

// ---------------------------------------------------------------- lie_core

pub fn antisymmetry(cases: u32) -> Result<(), String> {
    check("antisymmetry", cases, seeds(), |s| {
        let mu = raw_bracket(s);
        prop_assert_eq!(mu.antisymmetry_defect(), 0.0);
        let h = near_identity(&mut rng(s), mu.dim(), 0.3);
        prop_assert_eq!(group_action(&h, &mu).unwrap().antisymmetry_defect(), 0.0);
        Ok(())
    })
}

pub fn group_action_composes(cases: u32) -> Result<(), String> {
    check("group action composes", cases, seeds(), |s| {
        let mu = any_case(s).mu;
        let d = mu.dim();
        let mut r = rng(s ^ 1);
        let (h1, h2) = (near_identity(&mut r, d, 0.3), near_identity(&mut r, d, 0.3));
        let lhs = group_action(&(&h1 * &h2), &mu).unwrap();
        let rhs = group_action(&h1, &group_action(&h2, &mu).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) <= 1e-12, "{:e}", lhs.distance(&rhs));
        Ok(())
    })
}

pub fn group_action_keeps_jacobi(cases: u32) -> Result<(), String> {
    check("group action keeps Jacobi", cases, seeds(), |s| {
        let mu = lie_algebra_case(s).mu;
        let h = near_identity(&mut rng(s ^ 2), mu.dim(), 0.3);
        let moved = group_action(&h, &mu).unwrap();
        prop_assert!(jacobi_residual(&moved) <= 1e-10, "{:e}", jacobi_residual(&moved));
        Ok(())
    })
}

pub fn rescale_composes(cases: u32) -> Result<(), String> {
    check("rescale composes", cases, (seeds(), 0.1f64..10.0, 0.1f64..10.0), |(s, c1, c2)| {
        let mu = raw_bracket(s).scaled(1.0);
        let mu = mu.scaled(1.0 / mu.norm().max(1e-300));
        let lhs = mu.rescale(c2).unwrap().rescale(c1).unwrap();
        let rhs = mu.rescale(c1 * c2).unwrap();
        prop_assert!(lhs.distance(&rhs) <= 1e-14 * (1.0 + rhs.norm()), "{:e}", lhs.distance(&rhs));
        Ok(())
    })
}

pub fn derivations_annihilate(cases: u32) -> Result<(), String> {
    check("derivations annihilate mu", cases, seeds(), |s| {
        let mu = any_case(s).mu;
        for constraint in [DerivationConstraint::Full, DerivationConstraint::KToK, DerivationConstraint::KZero] {
            for d in derivation_space(&mu, constraint) {
                let m = d.matrix();
                let res = pi_action(m, &mu).unwrap().norm();
                prop_assert!(res <= 1e-10 * (1.0 + mu.norm() * m.norm()), "{:?}: {:e}", constraint, res);
            }
        }
        Ok(())
    })
}

pub fn k_to_k_derivations_preserve_p(cases: u32) -> Result<(), String> {
    check("Dp in p when B(k,p) = 0", cases, seeds(), |s| {
        let (mu, _) = canonicalize_reductive(&homogeneous_case(s).mu).map_err(|e| fail(e.to_string()))?;
        let q = mu.decomposition().q();
        let b = killing_form(&mu);
        prop_assert!(b.view((0, q), (q, mu.decomposition().n())).amax() <= 1e-10);
        for d in derivation_space(&mu, DerivationConstraint::KToK) {
            prop_assert!(d.preserves_p(1e-8), "p leaks into k: {:e}", d.p_to_k_block().amax());
        }
        Ok(())
    })
}

pub fn killing_form_invariance(cases: u32) -> Result<(), String> {
    check("Killing form invariance", cases, seeds(), |s| {
        let mu = lie_algebra_case(s).mu;
        let h = near_identity(&mut rng(s ^ 3), mu.dim(), 0.3);
        let moved = group_action(&h, &mu).unwrap();
        let lhs = h.transpose() * killing_form(&moved) * &h;
        let err = (lhs - killing_form(&mu)).amax();
        prop_assert!(err <= 1e-10, "{:e}", err);
        Ok(())
    })
}

// ---------------------------------------------------------------- curvature

pub fn ricci_orthogonal_equivariance(cases: u32) -> Result<(), String> {
    check("Ricci orthogonal equivariance", cases, seeds(), |s| {
        let case = any_case(s);
        let mu = case.mu;
        let (h, k) = if mu.decomposition().q() == 0 {
            let h = p_block_orthogonal(&mu, s);
            let k = h.clone();
            (h, k)
        } else {
            // Rotations of the (X1, X2) plane commute with the isotropy.
            let th = rng(s ^ 4).gen_range(0.0..std::f64::consts::TAU);
            let mut k = DMatrix::identity(3, 3);
            k[(0, 0)] = th.cos();
            k[(0, 1)] = -th.sin();
            k[(1, 0)] = th.sin();
            k[(1, 1)] = th.cos();
            (bracket_flow::linalg::block_diag_identity(1, &k), k)
        };
        let ric = ricci_operator(&mu).unwrap().ric;
        let moved = ricci_operator(&group_action(&h, &mu).unwrap()).unwrap().ric;
        let err = (moved - &k * ric * k.transpose()).amax();
        prop_assert!(err <= 1e-10, "{:e}", err);
        Ok(())
    })
}

pub fn ricci_scaling_law(cases: u32) -> Result<(), String> {
    check("Ricci scaling law", cases, (seeds(), 0.2f64..3.0), |(s, c)| {
        let mu = any_case(s).mu;
        let ric = ricci_operator(&mu).unwrap().ric;
        let scaled = ricci_operator(&mu.rescale(c).unwrap()).unwrap().ric;
        let err = (scaled - ric * (c * c)).amax();
        prop_assert!(err <= 1e-10, "{:e}", err);
        Ok(())
    })
}

pub fn unimodular_mean_curvature(cases: u32) -> Result<(), String> {
    check("unimodular implies H = 0", cases, seeds(), |s| {
        let mu = any_case(s).mu;
        let dec = mu.decomposition();
        let unimodular = dec.p_indices().all(|i| mu.ad(i).trace().abs() <= 1e-13);
        let h = ricci_operator(&mu).unwrap().mean_curvature;
        if unimodular {
            prop_assert!(h.amax() <= 1e-12, "{:e}", h.amax());
        }
        Ok(())
    })
}

pub fn nilpotent_trace_identity(cases: u32) -> Result<(), String> {
    check("trace identity on nilpotent algebras", cases, seeds(), |s| {
        let mut r = rng(s);
        let mu = if r.gen_bool(0.5) {
            super::heisenberg5(r.gen_range(0.3..1.5), r.gen_range(0.3..1.5))
        } else {
            super::filiform4(r.gen_range(0.3..1.5), r.gen_range(0.3..1.5))
        };
        let mu = group_action(&near_identity(&mut r, mu.dim(), 0.3), &mu).unwrap();
        let ric = ricci_operator(&mu).unwrap().ric;
        for d in derivation_space(&mu, DerivationConstraint::Full) {
            let dm = d.matrix();
            let comm = dm * &ric - &ric * dm;
            let t1 = (&ric * comm).trace();
            let t2 = (&ric * dm).trace();
            prop_assert!(t1.abs() <= 1e-10 && t2.abs() <= 1e-10, "{:e} {:e}", t1, t2);
        }
        Ok(())
    })
}

pub fn flat_reported(cases: u32) -> Result<(), String> {
    check("Ricci flat reported flat", cases, (seeds(), 0.1f64..3.0), |(s, c)| {
        let mu = if s % 2 == 0 {
            bracket_flow::scenarios::dpnop(0.0, 0.0, c)
        } else {
            bracket_flow::scenarios::abelian::<f64>(1 + (s % 5) as usize).unwrap()
        };
        let data = ricci_operator(&mu).unwrap();
        prop_assert!(data.ric.amax() <= 1e-14);
        prop_assert!(data.is_flat(1e-12));
        Ok(())
    })
}

// ---------------------------------------------------------------- flow

fn random_policy(s: u64, mu: &LieBracket64) -> NormalizationPolicy<f64> {
    let r = ricci_operator(mu).unwrap().scalar;
    match s % 5 {
        0 => NormalizationPolicy::Unnormalized,
        1 => NormalizationPolicy::BracketNormUnit,
        2 => NormalizationPolicy::BracketNormBounded,
        3 if r.abs() > 0.1 => NormalizationPolicy::ScalarConstant,
        _ => NormalizationPolicy::FixedR(rng(s ^ 5).gen_range(-1.0..1.0)),
    }
}

pub fn k_rows_frozen(cases: u32) -> Result<(), String> {
    check("k x g freeze", cases, seeds(), |s| {
        let mu = homogeneous_case(s).mu;
        let policy = random_policy(s, &mu);
        let traj = integrate(&mu, policy, window(&mu), &no_convergence())
            .map_err(|e| fail(e.to_string()))?;
        let want = k_by_g_values(&mu);
        for st in &traj.states {
            prop_assert!(k_by_g_values(&st.mu) == want, "k rows moved at t = {}", st.t);
        }
        Ok(())
    })
}

pub fn jacobi_drift(cases: u32) -> Result<(), String> {
    check("Jacobi drift", cases, seeds(), |s| {
        let mu = any_case(s).mu;
        let policy = random_policy(s, &mu);
        let traj = integrate(&mu, policy, window(&mu), &no_convergence())
            .map_err(|e| fail(e.to_string()))?;
        for st in &traj.states {
            let j = jacobi_residual(&st.mu);
            prop_assert!(j <= 1e-8, "{:e} at t = {}", j, st.t);
        }
        Ok(())
    })
}

pub fn scalar_curvature_ode(cases: u32) -> Result<(), String> {
    check("dR/dt = 2 tr Ric^2", cases, (seeds(), 0.1f64..0.9), |(s, frac)| {
        let case = any_case(s);
        let mu = case.mu.clone();
        let t0 = frac * window(&mu);
        let h = 1e-3 * window(&mu);
        let times = vec![t0 - h, t0 - h / 2.0, t0, t0 + h / 2.0, t0 + h];
        let opts = FlowOptions {
            ode: OdeOptions { rtol: 1e-13, atol: 1e-15, ..OdeOptions::default() },
            sample_times: Some(times),
            ..no_convergence()
        };
        let traj = integrate(&mu, NormalizationPolicy::Unnormalized, t0 + h, &opts).map_err(|e| fail(e.to_string()))?;
        let at = |t: f64| ricci_operator(&traj.at(t).expect("sample hit").mu).unwrap();
        let d = |k: f64| (at(t0 + k).scalar - at(t0 - k).scalar) / (2.0 * k);
        // Richardson extrapolation of the centered difference.
        let fd = (4.0 * d(h / 2.0) - d(h)) / 3.0;
        let exact = 2.0 * at(t0).ric_sq_trace;
        prop_assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0), "{:?}: {} vs {}", case, fd, exact);
        Ok(())
    })
}

fn compare_with_unnormalized(mu0: &LieBracket64, policy: NormalizationPolicy<f64>, t_end: f64) -> Outcome {
    let times: Vec<f64> = (1..=5).map(|i| t_end * (i as f64 / 5.0)).collect();
    let opts = FlowOptions { sample_times: Some(times.clone()), ..tight() };
    let norm = integrate(mu0, policy, t_end, &opts).map_err(|e| fail(e.to_string()))?;
    let states: Vec<_> = times.iter().map(|&t| norm.at(t).expect("sample hit").clone()).collect();
    let taus: Vec<f64> = states.iter().map(|s| s.tau).collect();
    let unnorm = integrate(
        mu0,
        NormalizationPolicy::Unnormalized,
        *taus.last().unwrap(),
        &FlowOptions { sample_times: Some(taus.clone()), ..tight() },
    )
    .map_err(|e| fail(e.to_string()))?;
    for st in &states {
        let nu = &unnorm.at(st.tau).expect("tau sample hit").mu;
        let err = st.mu.distance(&nu.rescale(st.c).unwrap());
        prop_assert!(err <= 1e-6, "{}: {:e} at t = {}", policy, err, st.t);
    }
    Ok(())
}

pub fn norm_pinning(cases: u32) -> Result<(), String> {
    check("unit norm pinning", cases, seeds(), |s| {
        let mu0 = unit_representative(&any_case(s).mu).map_err(|e| fail(e.to_string()))?;
        let traj = integrate(&mu0, NormalizationPolicy::BracketNormUnit, 2.0, &tight()).map_err(|e| fail(e.to_string()))?;
        for st in &traj.states {
            let b = st.mu.bracket_norm();
            let pp = (b.mu_k_sq + b.mu_p_sq).sqrt();
            prop_assert!((pp - 1.0).abs() <= 1e-8, "|mu_pp| = {} at t = {}", pp, st.t);
        }
        // The closed rescaling applied to the unnormalized flow at tau(t).
        let tau = traj.last().tau;
        let nu = integrate(&mu0, NormalizationPolicy::Unnormalized, tau, &tight()).map_err(|e| fail(e.to_string()))?;
        let closed = unit_representative(&nu.last().mu).unwrap();
        let err = closed.distance(&traj.last().mu);
        prop_assert!(err <= 1e-6, "{:e}", err);
        Ok(())
    })
}

pub fn bounded_policy(cases: u32) -> Result<(), String> {
    let alpha = {
        // Real root of 2x^3 + x - 1 by Newton from 0.5.
        let mut x = 0.5f64;
        for _ in 0..50 {
            x -= (2.0 * x * x * x + x - 1.0) / (6.0 * x * x + 1.0);
        }
        x
    };
    let beta = (1.0 - alpha).powi(2) + alpha.powi(4);
    check("bounded policy", cases, seeds(), |s| {
        let mu = any_case(s).mu;
        let rep = bounded_representative(&mu).map_err(|e| fail(e.to_string()))?;
        let in_band = |m: &LieBracket64| {
            let b = m.bracket_norm();
            let sq = b.mu_k_sq + b.mu_p_sq;
            let f = b.mu_k_sq.sqrt().sqrt() + b.mu_p_sq.sqrt();
            (sq, f)
        };
        let (sq, f) = in_band(&rep);
        prop_assert!((f - 1.0).abs() <= 1e-12 && sq >= beta - 1e-12 && sq <= 2.0, "{} {}", sq, f);
        let traj = integrate(&rep, NormalizationPolicy::BracketNormBounded, 2.0, &tight()).map_err(|e| fail(e.to_string()))?;
        for st in &traj.states {
            let (sq, f) = in_band(&st.mu);
            prop_assert!((f - 1.0).abs() <= 1e-8, "F = {} at t = {}", f, st.t);
            prop_assert!(sq >= beta - 1e-8 && sq <= 2.0, "|mu|^2 = {} at t = {}", sq, st.t);
        }
        Ok(())
    })
}

pub fn reparameterization(cases: u32) -> Result<(), String> {
    check("mu(t) = c(t) . nu(tau(t))", cases, seeds(), |s| {
        let mu = any_case(s).mu;
        let policy = match random_policy(s, &mu) {
            NormalizationPolicy::Unnormalized => NormalizationPolicy::BracketNormUnit,
            p => p,
        };
        compare_with_unnormalized(&mu, policy, window(&mu))
    })
}

pub fn fixed_points_stay(cases: u32) -> Result<(), String> {
    check("fixed points stay", cases, seeds(), |s| {
        let mu = soliton_case(s).mu;
        let fp = fixed_point_residual(&mu).unwrap();
        if fp.residual > 1e-12 * (1.0 + mu.norm().powi(3)) {
            return Ok(());
        }
        prop_assert!(bracket_flow_field(&mu, fp.r_star).unwrap().norm() <= 1e-12 * (1.0 + mu.norm().powi(3)));
        let traj = integrate(&mu, NormalizationPolicy::FixedR(fp.r_star), 10.0, &tight())
            .map_err(|e| fail(e.to_string()))?;
        for st in &traj.states {
            prop_assert!(st.mu.distance(&mu) <= 1e-9, "{:e} at t = {}", st.mu.distance(&mu), st.t);
        }
        Ok(())
    })
}

/// `F(mu(t))` is constant for isometry invariant `F` (here `R` and
/// `tr Ric^2`); the bracket norm is only `O(n)` invariant, and is constant
/// when the certificate can be taken with `D p ⊂ p`.
pub fn soliton_pinning(cases: u32) -> Result<(), String> {
    check("soliton pinning", cases, seeds(), |s| {
        let case = soliton_case(s);
        let mu = case.mu.clone();
        let fit = semi_algebraic_fit(&mu).unwrap();
        prop_assert!(fit.accepted, "{:?}: generator produced a non-soliton", case);
        let block = semi_algebraic_block_fit(&mu).unwrap().accepted;
        let d0 = ricci_operator(&mu).unwrap();
        let traj = integrate(&mu, NormalizationPolicy::FixedR(-fit.c), 5.0, &tight()).map_err(|e| fail(e.to_string()))?;
        prop_assert!(traj.termination == Termination::ReachedTEnd, "{:?}: {:?}", case, traj.termination);
        for st in &traj.states {
            let d = ricci_operator(&st.mu).map_err(|e| fail(format!("{case:?} at t = {}: {e}", st.t)))?;
            let dr = (d.scalar - d0.scalar).abs();
            let dq = (d.ric_sq_trace - d0.ric_sq_trace).abs();
            prop_assert!(dr <= 1e-7 && dq <= 1e-7, "{:?}: R drift {:e}, tr Ric^2 drift {:e} at t = {}", case, dr, dq, st.t);
            if block {
                let dn = (st.mu.norm() - mu.norm()).abs();
                prop_assert!(dn <= 1e-7, "{:?}: norm drift {:e} at t = {}", case, dn, st.t);
            }
        }
        Ok(())
    })
}

// ---------------------------------------------------------------- soliton

fn mixed_case(s: u64) -> super::Case {
    if s.is_multiple_of(2) {
        soliton_case(s)
    } else {
        any_case(s)
    }
}

pub fn certificate_soundness(cases: u32) -> Result<(), String> {
    check("certificate soundness", cases, seeds(), |s| {
        let mu = mixed_case(s).mu;
        for fit in [algebraic_soliton_fit(&mu).unwrap(), semi_algebraic_fit(&mu).unwrap()] {
            if fit.accepted {
                prop_assert!(fit.verify(&mu).unwrap(), "{:?} certificate does not re-verify", fit.kind);
                let der = pi_action(fit.derivation.matrix(), &mu).unwrap().norm();
                prop_assert!(der <= 1e-8, "|pi(D) mu| = {:e}", der);
            }
        }
        Ok(())
    })
}

pub fn report_invariants(cases: u32) -> Result<(), String> {
    check("report invariants", cases, seeds(), |s| {
        let mu = mixed_case(s).mu;
        let rep = classify(&mu).unwrap();
        prop_assert!(rep.algebraic.residual >= 0.0);
        prop_assert!(
            rep.semi_algebraic.residual <= rep.algebraic.residual + 1e-12,
            "semi {:e} > algebraic {:e}",
            rep.semi_algebraic.residual,
            rep.algebraic.residual
        );
        if rep.algebraic.accepted {
            prop_assert!(rep.dk_zero_check);
            prop_assert!(rep.algebraic.derivation.on_k().norm() <= 1e-8);
        }
        Ok(())
    })
}

pub fn block_representative(cases: u32) -> Result<(), String> {
    check("block representative when B(k,p) = 0", cases, seeds(), |s| {
        let case = if s % 2 == 0 { soliton_case(s) } else { homogeneous_case(s) };
        let (mu, _) = canonicalize_reductive(&case.mu).map_err(|e| fail(e.to_string()))?;
        let semi = semi_algebraic_fit(&mu).unwrap();
        if semi.accepted {
            let block = semi_algebraic_block_fit(&mu).unwrap();
            prop_assert!(block.accepted, "block residual {:e}", block.residual);
            prop_assert!(block.derivation.is_p_block_only(1e-12));
        }
        Ok(())
    })
}

pub fn algebraic_flow_consistency(cases: u32) -> Result<(), String> {
    check("algebraic solitons scale under the flow", cases, seeds(), |s| {
        let mu = soliton_case(s).mu;
        let fit = algebraic_soliton_fit(&mu).unwrap();
        if !(fit.accepted && fit.derivation.is_p_block_only(1e-8) && fit.c < 0.0) {
            return Ok(());
        }
        let times: Vec<f64> = (1..=10).map(|i| 0.5 * i as f64).collect();
        let opts = FlowOptions { sample_times: Some(times.clone()), ..tight() };
        let traj = integrate(&mu, NormalizationPolicy::Unnormalized, 5.0, &opts).map_err(|e| fail(e.to_string()))?;
        for &t in &times {
            let want = mu.rescale((-2.0 * fit.c * t + 1.0).powf(-0.5)).unwrap();
            let err = traj.at(t).unwrap().mu.distance(&want);
            prop_assert!(err <= 1e-6, "{:e} at t = {}", err, t);
        }
        Ok(())
    })
}

pub fn trace_ric_squared(cases: u32) -> Result<(), String> {
    check("c R = tr Ric^2 and sign", cases, seeds(), |s| {
        let mu = soliton_case(s).mu;
        let data = ricci_operator(&mu).unwrap();
        let mut certified = 0;
        for fit in [algebraic_soliton_fit(&mu).unwrap(), semi_algebraic_fit(&mu).unwrap()] {
            if !fit.accepted {
                continue;
            }
            certified += 1;
            let t2 = data.ric_sq_trace;
            prop_assert!((fit.c * data.scalar - t2).abs() <= 1e-8 * (1.0 + t2), "{} {} {}", fit.c, data.scalar, t2);
            if !data.is_flat(1e-10) {
                prop_assert!(fit.c != 0.0 && data.scalar != 0.0 && fit.c.signum() == data.scalar.signum());
            }
        }
        prop_assert!(certified > 0, "generator produced a non-soliton");
        Ok(())
    })
}

// ---------------------------------------------------------------- cli

pub fn json_round_trip(cases: u32) -> Result<(), String> {
    check("bracket JSON round trip", cases, seeds(), |s| {
        let mu = raw_bracket(s);
        let back: LieBracket64 = from_json_str(&to_json_string(&mu)).map_err(|e| fail(e.to_string()))?;
        prop_assert!(back.coeffs().iter().zip(mu.coeffs()).all(|(a, b)| a.to_bits() == b.to_bits()));
        Ok(())
    })
}

pub fn built_in_scenarios_are_members(_cases: u32) -> Result<(), String> {
    for (name, _) in BUILT_IN {
        let mu: LieBracket64 = name.parse::<Scenario>().and_then(|s| s.build()).map_err(|e| e.to_string())?;
        let report = check_membership(&mu, &MembershipTolerances::default());
        if !report.passed {
            return Err(format!("{name} fails membership: {:?}", report.failures()));
        }
    }
    Ok(())
}

pub const LIE: &[(&str, Property)] = &[
    ("antisymmetry", antisymmetry),
    ("group_action_composes", group_action_composes),
    ("group_action_keeps_jacobi", group_action_keeps_jacobi),
    ("rescale_composes", rescale_composes),
    ("derivations_annihilate", derivations_annihilate),
    ("k_to_k_derivations_preserve_p", k_to_k_derivations_preserve_p),
    ("killing_form_invariance", killing_form_invariance),
];

pub const CURVATURE: &[(&str, Property)] = &[
    ("ricci_orthogonal_equivariance", ricci_orthogonal_equivariance),
    ("ricci_scaling_law", ricci_scaling_law),
    ("unimodular_mean_curvature", unimodular_mean_curvature),
    ("nilpotent_trace_identity", nilpotent_trace_identity),
    ("flat_reported", flat_reported),
];

pub const FLOW: &[(&str, Property)] = &[
    ("k_rows_frozen", k_rows_frozen),
    ("jacobi_drift", jacobi_drift),
    ("scalar_curvature_ode", scalar_curvature_ode),
    ("norm_pinning", norm_pinning),
    ("bounded_policy", bounded_policy),
    ("reparameterization", reparameterization),
    ("fixed_points_stay", fixed_points_stay),
    ("soliton_pinning", soliton_pinning),
];

pub const SOLITON: &[(&str, Property)] = &[
    ("certificate_soundness", certificate_soundness),
    ("report_invariants", report_invariants),
    ("block_representative", block_representative),
    ("algebraic_flow_consistency", algebraic_flow_consistency),
    ("trace_ric_squared", trace_ric_squared),
];

pub const CLI: &[(&str, Property)] = &[
    ("json_round_trip", json_round_trip),
    ("built_in_scenarios_are_members", built_in_scenarios_are_members),
];

//! Seeded generators of well-conditioned brackets and the property runner
//! shared by the integration tests.
#![allow(dead_code)]

pub mod props;

use bracket_flow::lie::{group_action, Decomposition};
use bracket_flow::scenarios;
use bracket_flow::LieBracket64;
use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Cases per property.
pub const CASES: u32 = 100;

const SEED: [u8; 32] = *b"bracket-flow property suite seed";

/// Runs `test` on `cases` inputs drawn from `strategy` with a fixed seed.
pub fn check<S, F>(name: &str, cases: u32, strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let config = Config {
        cases,
        failure_persistence: None,
        rng_algorithm: RngAlgorithm::ChaCha,
        max_shrink_iters: 8,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED));
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

/// A bracket together with how it was built.
#[derive(Clone)]
pub struct Case {
    pub label: String,
    pub mu: LieBracket64,
}

impl std::fmt::Debug for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let x = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        x
    } else {
        -x
    }
}

/// `I + spread U` with `U` uniform in `[-1, 1]`, redrawn until its
/// singular values lie in `[0.5, 2]`.
pub fn near_identity(rng: &mut ChaCha8Rng, n: usize, spread: f64) -> DMatrix<f64> {
    loop {
        let h = DMatrix::identity(n, n) + DMatrix::from_fn(n, n, |_, _| spread * rng.gen_range(-1.0..1.0));
        let sv = h.clone().svd(false, false).singular_values;
        if sv.max() <= 2.0 && sv.min() >= 0.5 {
            return h;
        }
    }
}

/// Random orthogonal matrix (QR of a Gaussian-like matrix).
pub fn orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    let q = a.qr().q();
    if rng.gen_bool(0.5) {
        q
    } else {
        let mut flip = DMatrix::identity(n, n);
        flip[(0, 0)] = -1.0;
        q * flip
    }
}

fn lie_group(n: usize) -> Decomposition {
    Decomposition::lie_group(n).unwrap()
}

pub fn heisenberg5(a: f64, b: f64) -> LieBracket64 {
    LieBracket64::from_terms(lie_group(5), &[(0, 1, 4, a), (2, 3, 4, b)]).unwrap()
}

pub fn filiform4(a: f64, b: f64) -> LieBracket64 {
    LieBracket64::from_terms(lie_group(4), &[(0, 1, 2, a), (0, 2, 3, b)]).unwrap()
}

/// `R e0 ⋉_A R^m`: `[e0, e_i] = sum_j A_ji e_j`.
pub fn semidirect(a: &DMatrix<f64>) -> LieBracket64 {
    let m = a.nrows();
    let mut terms = Vec::new();
    for i in 0..m {
        for j in 0..m {
            terms.push((0, i + 1, j + 1, a[(j, i)]));
        }
    }
    LieBracket64::from_terms(lie_group(m + 1), &terms).unwrap()
}

fn moved(mu: &LieBracket64, h: &DMatrix<f64>) -> LieBracket64 {
    group_action(h, mu).unwrap()
}

/// Lie algebra (`q = 0`) in a random well-conditioned basis.
pub fn lie_algebra_case(seed: u64) -> Case {
    let mut r = rng(seed);
    let kind = r.gen_range(0..6);
    let (label, mu) = match kind {
        0 => ("h3".to_string(), scenarios::heisenberg::<f64>().scaled(signed(&mut r, 0.5, 1.5))),
        1 => {
            let (a, b) = (signed(&mut r, 0.3, 1.5), signed(&mut r, 0.3, 1.5));
            (format!("h5({a:.3},{b:.3})"), heisenberg5(a, b))
        }
        2 => {
            let (a, b) = (signed(&mut r, 0.3, 1.5), signed(&mut r, 0.3, 1.5));
            (format!("filiform4({a:.3},{b:.3})"), filiform4(a, b))
        }
        3 => {
            let (a, b, c) = (signed(&mut r, 0.0, 1.5), signed(&mut r, 0.0, 1.5), signed(&mut r, 0.0, 1.5));
            (format!("nosemi2({a:.3},{b:.3},{c:.3})"), scenarios::nosemi2(a, b, c))
        }
        4 => {
            let m = r.gen_range(2..4);
            let a = DMatrix::from_fn(m, m, |_, _| r.gen_range(-1.0..1.0));
            (format!("semidirect{m}"), semidirect(&a))
        }
        _ => ("so3".to_string(), scenarios::so3::<f64>().scaled(signed(&mut r, 0.5, 1.5))),
    };
    let n = mu.dim();
    let h = near_identity(&mut r, n, 0.3);
    Case { label: format!("{label} seed {seed}"), mu: moved(&mu, &h) }
}

/// `dpnop(a, b, c)` with a rotation commuting with `ad Z`.
pub fn homogeneous_case(seed: u64) -> Case {
    let mut r = rng(seed);
    let (a, b, c) = (r.gen_range(-1.5..1.5), r.gen_range(-1.5..1.5), r.gen_range(-1.5..1.5));
    let mu = scenarios::dpnop(a, b, c);
    Case { label: format!("dpnop({a:.3},{b:.3},{c:.3}) seed {seed}"), mu: rotate_dpnop(&mu, &mut r) }
}

/// `diag(1, R(theta), +-1)` commutes with `ad Z` on `p`.
fn rotate_dpnop(mu: &LieBracket64, r: &mut ChaCha8Rng) -> LieBracket64 {
    let th = r.gen_range(0.0..std::f64::consts::TAU);
    let mut h = DMatrix::identity(4, 4);
    h[(1, 1)] = th.cos();
    h[(1, 2)] = -th.sin();
    h[(2, 1)] = th.sin();
    h[(2, 2)] = th.cos();
    if r.gen_bool(0.5) {
        h[(3, 3)] = -1.0;
    }
    moved(mu, &h)
}

/// Three Lie algebras for every homogeneous space.
pub fn any_case(seed: u64) -> Case {
    if seed % 4 == 3 {
        homogeneous_case(seed)
    } else {
        lie_algebra_case(seed)
    }
}

/// Known solitons, rescaled to norm at most 1 and moved by isometries.
pub fn soliton_case(seed: u64) -> Case {
    let mut r = rng(seed);
    let kind = r.gen_range(0..7);
    let (label, mu) = match kind {
        0 => ("h3".to_string(), scenarios::heisenberg::<f64>()),
        1 => {
            let a = signed(&mut r, 0.3, 1.5);
            let c = if r.gen_bool(0.5) { a } else { -a };
            (format!("nosemi2({a:.3},0,{c:.3})"), scenarios::nosemi2(a, 0.0, c))
        }
        2 => {
            let a = signed(&mut r, 0.3, 1.5);
            (format!("h5({a:.3},{a:.3})"), heisenberg5(a, a))
        }
        3 => ("so3".to_string(), scenarios::so3::<f64>()),
        4 => {
            let m = r.gen_range(2..4);
            let b = DMatrix::from_fn(m, m, |_, _| r.gen_range(-1.0..1.0));
            let a = &b + b.transpose() + DMatrix::identity(m, m) * 2.5;
            (format!("semidirect-sym{m}"), semidirect(&a))
        }
        5 => ("hyperbolic".to_string(), semidirect(&DMatrix::identity(3, 3))),
        _ => {
            let (a, c) = (r.gen_range(0.3..1.0), r.gen_range(0.3..1.0));
            let mu = scenarios::dpnop(a, -a * c, c);
            let mu = rotate_dpnop(&mu, &mut r);
            return Case { label: format!("dpnop({a:.3},{:.3},{c:.3}) seed {seed}", -a * c), mu };
        }
    };
    let s = r.gen_range(0.5..1.0);
    let h = orthogonal(&mut r, mu.dim());
    Case { label: format!("{label} |mu| = {s:.3} seed {seed}"), mu: moved(&mu.scaled(s / mu.norm()), &h) }
}

/// Antisymmetric coefficients with no Lie structure, spanning many magnitudes.
pub fn raw_bracket(seed: u64) -> LieBracket64 {
    let mut r = rng(seed);
    let q = r.gen_range(0..3);
    let n = r.gen_range(1..5);
    let dec = Decomposition::new(q, n).unwrap();
    let d = dec.dim();
    let mut terms = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..d {
                if r.gen_bool(0.6) {
                    let mant: f64 = r.gen_range(-1.0..1.0);
                    let exp: i32 = r.gen_range(-30..30);
                    terms.push((i, j, k, mant * 10f64.powi(exp)));
                }
            }
        }
    }
    LieBracket64::from_terms(dec, &terms).unwrap()
}

pub fn seeds() -> impl Strategy<Value = u64> {
    any::<u64>()
}

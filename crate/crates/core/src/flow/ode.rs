//! Dormand-Prince 5(4) with PI step-size control for autonomous systems.
//!
//! Time is accumulated with a compensated sum so that long runs and runs
//! approaching a finite-time singularity do not lose steps to rounding in `t`.

use crate::error::{Error, Result};
use crate::scalar::{two_sum, Scalar};

/// Step-size control parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions<T> {
    pub rtol: T,
    pub atol: T,
    /// Smallest admissible `|h|`; reaching it ends the run.
    pub step_floor: T,
    /// Optional first step; estimated from the field otherwise.
    pub initial_step: Option<T>,
    pub max_steps: usize,
}

impl<T: Scalar> Default for OdeOptions<T> {
    fn default() -> Self {
        Self {
            rtol: T::lit(1e-9),
            atol: T::lit(1e-12),
            step_floor: T::lit(1e-14),
            initial_step: None,
            max_steps: 5_000_000,
        }
    }
}

/// Reply of the step observer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Control {
    Continue,
    Stop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum OdeStatus {
    ReachedEnd,
    Stopped,
    StepFloor,
    Event,
}

/// Point handed to the observer after every accepted step.
pub(crate) struct StepInfo<'a, T> {
    pub t: T,
    pub y: &'a [T],
    pub dy: &'a [T],
    /// True when the point is an output point (a requested sample time,
    /// every step when no samples were requested, the end point, or an event).
    pub output: bool,
}

/// Scalar event function; the run stops where it changes sign.
pub(crate) type EventFn<'a, T> = &'a dyn Fn(&[T]) -> T;

struct Tableau<T> {
    a: [[T; 6]; 6],
    e: [T; 7],
}

impl<T: Scalar> Tableau<T> {
    fn new() -> Self {
        let l = T::lit;
        let z = T::zero();
        Self {
            // The last row doubles as the fifth-order weights (FSAL).
            a: [
                [l(0.2), z, z, z, z, z],
                [l(3.0 / 40.0), l(9.0 / 40.0), z, z, z, z],
                [l(44.0 / 45.0), l(-56.0 / 15.0), l(32.0 / 9.0), z, z, z],
                [l(19372.0 / 6561.0), l(-25360.0 / 2187.0), l(64448.0 / 6561.0), l(-212.0 / 729.0), z, z],
                [l(9017.0 / 3168.0), l(-355.0 / 33.0), l(46732.0 / 5247.0), l(49.0 / 176.0), l(-5103.0 / 18656.0), z],
                [l(35.0 / 384.0), z, l(500.0 / 1113.0), l(125.0 / 192.0), l(-2187.0 / 6784.0), l(11.0 / 84.0)],
            ],
            e: [
                l(71.0 / 57600.0),
                z,
                l(-71.0 / 16695.0),
                l(71.0 / 1920.0),
                l(-17253.0 / 339200.0),
                l(22.0 / 525.0),
                l(-1.0 / 40.0),
            ],
        }
    }
}

/// Result of a single trial step.
struct Trial<T> {
    y: Vec<T>,
    dy: Vec<T>,
    err: T,
}

fn trial_step<T: Scalar, F>(tab: &Tableau<T>, f: &mut F, y: &[T], k1: &[T], h: T, opts: &OdeOptions<T>) -> Result<Trial<T>>
where
    F: FnMut(&[T]) -> Result<Vec<T>>,
{
    let n = y.len();
    let mut ks: Vec<Vec<T>> = Vec::with_capacity(7);
    ks.push(k1.to_vec());
    let mut stage = vec![T::zero(); n];
    for s in 0..6 {
        for i in 0..n {
            let mut acc = T::zero();
            for (j, k) in ks.iter().enumerate() {
                acc += tab.a[s][j] * k[i];
            }
            stage[i] = y[i] + h * acc;
        }
        if s == 5 {
            break;
        }
        ks.push(f(&stage)?);
    }
    let y_new = stage;
    let k7 = f(&y_new)?;
    ks.push(k7);

    let mut sum = T::zero();
    let mut finite = true;
    for i in 0..n {
        let mut e = T::zero();
        for (j, k) in ks.iter().enumerate() {
            e += tab.e[j] * k[i];
        }
        e *= h;
        let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
        let r = e / sc;
        if !r.is_finite() || !y_new[i].is_finite() {
            finite = false;
        }
        sum += r * r;
    }
    let err = if n == 0 {
        T::zero()
    } else if finite {
        (sum / T::from_usize(n).expect("usize")).sqrt()
    } else {
        T::max_value().expect("bounded")
    };
    let dy = ks.pop().expect("seven stages");
    Ok(Trial { y: y_new, dy, err })
}

fn weighted_rms<T: Scalar>(v: &[T], y: &[T], opts: &OdeOptions<T>) -> T {
    if v.is_empty() {
        return T::zero();
    }
    let s = v.iter().zip(y).fold(T::zero(), |acc, (&x, &yy)| {
        let r = x / (opts.atol + opts.rtol * yy.abs());
        acc + r * r
    });
    (s / T::from_usize(v.len()).expect("usize")).sqrt()
}

/// Hairer's starting step heuristic.
fn initial_step<T: Scalar, F>(f: &mut F, y: &[T], f0: &[T], dir: T, opts: &OdeOptions<T>) -> Result<T>
where
    F: FnMut(&[T]) -> Result<Vec<T>>,
{
    let d0 = weighted_rms(y, y, opts);
    let d1 = weighted_rms(f0, y, opts);
    let small = T::lit(1e-5);
    let h0 = if d0 < small || d1 < small { T::lit(1e-6) } else { T::lit(0.01) * d0 / d1 };
    let y1: Vec<T> = y.iter().zip(f0).map(|(&a, &b)| a + dir * h0 * b).collect();
    let f1 = f(&y1)?;
    let diff: Vec<T> = f1.iter().zip(f0).map(|(&a, &b)| a - b).collect();
    let d2 = weighted_rms(&diff, y, opts) / h0;
    let m = d1.max(d2);
    let h1 = if m <= T::lit(1e-15) {
        (h0 * T::lit(1e-3)).max(T::lit(1e-6))
    } else {
        (T::lit(0.01) / m).powf(T::lit(0.2))
    };
    Ok((T::lit(100.0) * h0).min(h1))
}

/// Compensated time `hi + lo`.
#[derive(Clone, Copy)]
struct Time<T> {
    hi: T,
    lo: T,
}

impl<T: Scalar> Time<T> {
    fn advance(&mut self, h: T) {
        let (s, e) = two_sum(self.hi, h);
        let (s2, e2) = two_sum(s, self.lo + e);
        self.hi = s2;
        self.lo = e2;
    }

    /// `target - self` with the low part folded in.
    fn remaining(&self, target: T) -> T {
        (target - self.hi) - self.lo
    }
}

/// Integrates `y' = f(y)` from `t0` to `t_end` (either direction).
///
/// `samples` (sorted in the direction of integration) restricts output points;
/// steps are shortened to land on them. `event` stops the run at a sign change
/// of the event function, located by regula falsi on the last step.
#[allow(clippy::too_many_arguments)]
pub(crate) fn solve<T, F, O>(
    f: &mut F,
    t0: T,
    y0: Vec<T>,
    t_end: T,
    opts: &OdeOptions<T>,
    samples: Option<&[T]>,
    event: Option<EventFn<'_, T>>,
    observe: &mut O,
) -> Result<OdeStatus>
where
    T: Scalar,
    F: FnMut(&[T]) -> Result<Vec<T>>,
    O: FnMut(StepInfo<'_, T>) -> Result<Control>,
{
    let tab = Tableau::<T>::new();
    let mut time = Time { hi: t0, lo: T::zero() };
    let mut y = y0;
    let mut dy = f(&y)?;
    if observe(StepInfo { t: time.hi, y: &y, dy: &dy, output: true })? == Control::Stop {
        return Ok(OdeStatus::Stopped);
    }
    if t_end == t0 {
        return Ok(OdeStatus::ReachedEnd);
    }
    let dir = if t_end > t0 { T::one() } else { -T::one() };
    let mut h = match opts.initial_step {
        Some(h) => h.abs(),
        None => initial_step(f, &y, &dy, dir, opts)?,
    };
    h = h.min((t_end - t0).abs());

    let mut sample_idx = 0usize;
    let samples: &[T] = samples.unwrap_or(&[]);
    let every_step = samples.is_empty();
    // Skip samples at or behind the start.
    while sample_idx < samples.len() && dir * time.remaining(samples[sample_idx]) <= T::zero() {
        sample_idx += 1;
    }
    let mut g_prev = event.map(|g| g(&y));

    let beta = T::lit(0.04);
    let expo1 = T::lit(0.2) - beta * T::lit(0.75);
    let safe = T::lit(0.9);
    let fac_min = T::lit(0.2);
    let fac_max = T::lit(10.0);
    let mut fac_old = T::lit(1e-4);
    let mut steps = 0usize;

    loop {
        if steps >= opts.max_steps {
            return Err(Error::Integration(format!("step budget of {} exhausted at t = {}", opts.max_steps, time.hi)));
        }
        // Target of this step: next sample or the end.
        let to_end = time.remaining(t_end);
        let (to_target, hits_sample) = if sample_idx < samples.len() {
            let to_s = time.remaining(samples[sample_idx]);
            if to_s.abs() < to_end.abs() {
                (to_s, true)
            } else {
                (to_end, false)
            }
        } else {
            (to_end, false)
        };
        let mut last = false;
        let mut hs = dir * h;
        if h >= to_target.abs() {
            hs = to_target;
            last = true;
        }
        if hs.abs() < opts.step_floor && !last {
            return Ok(OdeStatus::StepFloor);
        }

        let trial = trial_step(&tab, f, &y, &dy, hs, opts)?;
        steps += 1;
        if trial.err <= T::one() {
            let fac11 = trial.err.powf(expo1);
            let mut fac = fac11 / fac_old.powf(beta);
            fac = (fac / safe).max(T::one() / fac_max).min(T::one() / fac_min);
            let h_next = hs.abs() / fac;
            fac_old = trial.err.max(T::lit(1e-4));

            let y_old = std::mem::replace(&mut y, trial.y);
            let dy_old = std::mem::replace(&mut dy, trial.dy);
            if last {
                let target = if hits_sample { samples[sample_idx] } else { t_end };
                time = Time { hi: target, lo: T::zero() };
            } else {
                time.advance(hs);
            }

            if let (Some(g), Some(gp)) = (event, g_prev) {
                let gn = g(&y);
                if gn == T::zero() || (gn > T::zero()) != (gp > T::zero()) {
                    let (hh, yy, dd) = locate_event(&tab, f, &y_old, &dy_old, hs, gp, gn, g, opts)?;
                    let mut t_ev = Time { hi: time.hi, lo: time.lo };
                    // Rewind the accepted step and advance by the located one.
                    t_ev.advance(-hs);
                    t_ev.advance(hh);
                    observe(StepInfo { t: t_ev.hi + t_ev.lo, y: &yy, dy: &dd, output: true })?;
                    return Ok(OdeStatus::Event);
                }
                g_prev = Some(gn);
            }

            let output = every_step || last;
            if observe(StepInfo { t: time.hi + time.lo, y: &y, dy: &dy, output })? == Control::Stop {
                return Ok(OdeStatus::Stopped);
            }
            if last && !hits_sample {
                return Ok(OdeStatus::ReachedEnd);
            }
            if last && hits_sample {
                sample_idx += 1;
                // Keep the step the controller proposed rather than the clamped one.
                h = h_next.max(h);
            } else {
                h = h_next;
            }
        } else {
            let fac11 = trial.err.powf(expo1);
            let shrink = (fac11 / safe).min(T::one() / fac_min);
            let shrink = if shrink.is_finite() { shrink } else { T::lit(10.0) };
            h = hs.abs() / shrink;
            if h < opts.step_floor {
                return Ok(OdeStatus::StepFloor);
            }
        }
    }
}

/// Finds `h* in (0, h]` (signed) with `g(step(y, h*)) = 0` by the Illinois method.
#[allow(clippy::too_many_arguments)]
fn locate_event<T: Scalar, F>(
    tab: &Tableau<T>,
    f: &mut F,
    y: &[T],
    dy: &[T],
    h: T,
    g0: T,
    g1: T,
    g: EventFn<'_, T>,
    opts: &OdeOptions<T>,
) -> Result<(T, Vec<T>, Vec<T>)>
where
    F: FnMut(&[T]) -> Result<Vec<T>>,
{
    let (mut a, mut ga) = (T::zero(), g0);
    let (mut b, mut gb) = (h, g1);
    let full = trial_step(tab, f, y, dy, h, opts)?;
    let mut best = (h, full.y, full.dy);
    if g1 == T::zero() {
        return Ok(best);
    }
    let mut side = 0i8;
    for _ in 0..100 {
        let m = (a * gb - b * ga) / (gb - ga);
        let m = if m.is_finite() { m } else { (a + b) * T::lit(0.5) };
        let tr = trial_step(tab, f, y, dy, m, opts)?;
        let gm = g(&tr.y);
        best = (m, tr.y, tr.dy);
        let scale = ga.abs().max(gb.abs()).max(T::one());
        if gm.abs() <= T::lit(4.0) * <T as Scalar>::epsilon() * scale || (b - a).abs() <= <T as Scalar>::epsilon() * h.abs() {
            break;
        }
        if (gm > T::zero()) == (gb > T::zero()) {
            b = m;
            gb = gm;
            if side == 1 {
                ga *= T::lit(0.5);
            }
            side = 1;
        } else {
            a = m;
            ga = gm;
            if side == -1 {
                gb *= T::lit(0.5);
            }
            side = -1;
        }
    }
    Ok(best)
}

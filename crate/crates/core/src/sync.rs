//! Complete and phase synchronization measures on mechanical-mode pairs.
//!
//! The relative coordinates are `q_− = (q_1 − q_2)/√2`, `p_− = (p_1 − p_2)/√2`.
//! Fluctuation operators are mean-free, so the measures computed from a
//! fluctuation covariance matrix are the relative (systematic-error free)
//! ones. The absolute complete measure adds `⟨q_−⟩² + ⟨p_−⟩²` from the
//! classical means.

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::gaussian::{TwoModeCm, PHYSICALITY_TOL};

/// Below this mean amplitude the phase `arg ⟨b⟩` is treated as undefined.
pub const AMPLITUDE_FLOOR: f64 = 1e-6;

/// Round-off margin below vacuum before a variance counts as squeezed.
pub const SQUEEZING_MARGIN: f64 = 1e-12;

/// Phases of the classical mechanical amplitudes used for the rotating frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePair {
    pub first: f64,
    pub second: f64,
}

impl PhasePair {
    pub fn new(first: f64, second: f64) -> Self {
        PhasePair { first, second }
    }

    /// `arg` of two mean amplitudes, or `None` if either is below
    /// [`AMPLITUDE_FLOOR`] or non-finite.
    pub fn from_amplitudes(b1: Complex<f64>, b2: Complex<f64>) -> Option<Self> {
        let ok = |b: Complex<f64>| b.norm() > AMPLITUDE_FLOOR && b.re.is_finite() && b.im.is_finite();
        (ok(b1) && ok(b2)).then(|| PhasePair::new(b1.arg(), b2.arg()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompleteSync {
    pub s_c: f64,
    pub var_qminus: f64,
    pub var_pminus: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseSync {
    pub s_p: f64,
    pub var_pminus_rot: f64,
    pub var_qminus_rot: f64,
    /// Phase quadrature below vacuum: the positive-P classicality threshold
    /// `S_p ≤ 1` can be exceeded.
    pub squeezed: bool,
}

fn relative_variances(pair: &TwoModeCm) -> (f64, f64) {
    let m = &pair.0;
    let vq = 0.5 * (m[(0, 0)] + m[(2, 2)] - 2.0 * m[(0, 2)]);
    let vp = 0.5 * (m[(1, 1)] + m[(3, 3)] - 2.0 * m[(1, 3)]);
    (vq, vp)
}

/// `S_c = ⟨q_−² + p_−²⟩⁻¹` on the fluctuations.
pub fn s_complete(pair: &TwoModeCm) -> Result<CompleteSync> {
    pair.check_physical(PHYSICALITY_TOL)?;
    let (var_qminus, var_pminus) = relative_variances(pair);
    Ok(CompleteSync {
        s_c: 1.0 / (var_qminus + var_pminus),
        var_qminus,
        var_pminus,
    })
}

/// `S_p = (2⟨p'_−²⟩)⁻¹` in the frame co-rotating with each mean amplitude.
pub fn s_phase(pair: &TwoModeCm, phases: PhasePair) -> Result<PhaseSync> {
    if !phases.first.is_finite() || !phases.second.is_finite() {
        return Err(Error::InvalidParams("phases must be finite".into()));
    }
    pair.check_physical(PHYSICALITY_TOL)?;
    let rotated = pair.rotate(0, phases.first).rotate(1, phases.second);
    let (var_qminus_rot, var_pminus_rot) = relative_variances(&rotated);
    Ok(PhaseSync {
        s_p: 1.0 / (2.0 * var_pminus_rot),
        var_pminus_rot,
        var_qminus_rot,
        squeezed: var_pminus_rot < 0.5 - SQUEEZING_MARGIN,
    })
}

/// Systematic error `⟨q_−⟩² + ⟨p_−⟩² = |β_1 − β_2|²` of two mean amplitudes.
pub fn systematic_error(b1: Complex<f64>, b2: Complex<f64>) -> f64 {
    (b1 - b2).norm_sqr()
}

/// One time sample of the synchronization measures.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SyncSample {
    pub t: f64,
    pub s_c: f64,
    pub var_qminus: f64,
    pub var_pminus: f64,
    /// Absolute complete measure including the classical systematic error.
    pub s_c_absolute: f64,
    /// `None` when a mean amplitude is below the amplitude floor.
    pub phase: Option<PhaseSync>,
}

impl SyncSample {
    pub fn evaluate(t: f64, pair: &TwoModeCm, b1: Complex<f64>, b2: Complex<f64>) -> Result<Self> {
        let complete = s_complete(pair)?;
        let phase = match PhasePair::from_amplitudes(b1, b2) {
            Some(phases) => Some(s_phase(pair, phases)?),
            None => None,
        };
        Ok(SyncSample {
            t,
            s_c: complete.s_c,
            var_qminus: complete.var_qminus,
            var_pminus: complete.var_pminus,
            s_c_absolute: 1.0
                / (complete.var_qminus + complete.var_pminus + systematic_error(b1, b2)),
            phase,
        })
    }

    pub fn s_p(&self) -> Option<f64> {
        self.phase.map(|p| p.s_p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundReport {
    /// `1/(2√(⟨q_−²⟩⟨p_−²⟩))`, itself at most 1 by Heisenberg.
    pub heisenberg_limit: f64,
    /// `S_c` does not exceed the Heisenberg-derived limit.
    pub heisenberg_ok: bool,
    /// Conjectured ordering `S_p ≤ S_c`; monitored, never fatal.
    pub phase_below_complete: Option<bool>,
    /// Phase-quadrature squeezing, needed to beat `S_p ≤ 1`.
    pub squeezing: Option<bool>,
}

impl BoundReport {
    pub fn all_ok(&self) -> bool {
        self.heisenberg_ok
            && self.phase_below_complete.unwrap_or(true)
            && !self.squeezing.unwrap_or(false)
    }
}

pub fn check_bounds(sample: &SyncSample, tol: f64) -> BoundReport {
    let heisenberg_limit = 1.0 / (2.0 * (sample.var_qminus * sample.var_pminus).sqrt());
    BoundReport {
        heisenberg_limit,
        heisenberg_ok: sample.s_c <= heisenberg_limit + tol,
        phase_below_complete: sample.phase.map(|p| p.s_p <= sample.s_c + tol),
        squeezing: sample.phase.map(|p| p.squeezed),
    }
}

/// Mean of the piecewise-linear interpolant of `(times, values)` over
/// `[t0, t1]`, i.e. the trapezoidal rule with exact partial end intervals.
/// A zero-width window evaluates the interpolant at that point.
pub fn trapezoid_mean(times: &[f64], values: &[f64], t0: f64, t1: f64) -> Result<f64> {
    assert_eq!(times.len(), values.len());
    let (first, last) = match (times.first(), times.last()) {
        (Some(&f), Some(&l)) => (f, l),
        _ => {
            return Err(Error::WindowOutOfRange {
                t0,
                t1,
                first: f64::NAN,
                last: f64::NAN,
            })
        }
    };
    let slack = 1e-9 * (last - first).abs().max(1.0);
    if !(t1 >= t0) || t0 < first - slack || t1 > last + slack {
        return Err(Error::WindowOutOfRange {
            t0,
            t1,
            first,
            last,
        });
    }
    let t0 = t0.max(first);
    let t1 = t1.min(last);
    let interp = |k: usize, t: f64| {
        let (ta, tb) = (times[k], times[k + 1]);
        if tb == ta {
            values[k]
        } else {
            values[k] + (values[k + 1] - values[k]) * (t - ta) / (tb - ta)
        }
    };
    if times.len() == 1 {
        return Ok(values[0]);
    }
    let segment = |t: f64| {
        times
            .windows(2)
            .position(|w| t <= w[1])
            .unwrap_or(times.len() - 2)
    };
    if t1 == t0 {
        return Ok(interp(segment(t0), t0));
    }
    let mut integral = 0.0;
    for k in 0..times.len() - 1 {
        let a = times[k].max(t0);
        let b = times[k + 1].min(t1);
        if b > a {
            integral += 0.5 * (interp(k, a) + interp(k, b)) * (b - a);
        }
    }
    Ok(integral / (t1 - t0))
}

/// Time-averaged synchronization measures over a window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SyncAverage {
    pub s_c: f64,
    pub var_qminus: f64,
    pub var_pminus: f64,
    pub s_c_absolute: f64,
    /// `None` if any sample in the window lacks a valid phase.
    pub s_p: Option<f64>,
    pub var_pminus_rot: Option<f64>,
    pub var_qminus_rot: Option<f64>,
}

pub fn time_average(series: &[SyncSample], window: (f64, f64)) -> Result<SyncAverage> {
    let (t0, t1) = window;
    let times: Vec<f64> = series.iter().map(|s| s.t).collect();
    let mean = |f: &dyn Fn(&SyncSample) -> f64| {
        let v: Vec<f64> = series.iter().map(f).collect();
        trapezoid_mean(&times, &v, t0, t1)
    };
    let in_window = series
        .iter()
        .filter(|s| s.t >= t0 - 1e-12 && s.t <= t1 + 1e-12);
    let phases_valid = in_window.clone().all(|s| s.phase.is_some());
    let phase_mean = |f: fn(&PhaseSync) -> f64| -> Result<Option<f64>> {
        if phases_valid {
            Ok(Some(mean(&|s| s.phase.as_ref().map(f).unwrap_or(f64::NAN))?))
        } else {
            Ok(None)
        }
    };
    Ok(SyncAverage {
        s_c: mean(&|s| s.s_c)?,
        var_qminus: mean(&|s| s.var_qminus)?,
        var_pminus: mean(&|s| s.var_pminus)?,
        s_c_absolute: mean(&|s| s.s_c_absolute)?,
        s_p: phase_mean(|p| p.s_p)?,
        var_pminus_rot: phase_mean(|p| p.var_pminus_rot)?,
        var_qminus_rot: phase_mean(|p| p.var_qminus_rot)?,
    })
}

//! Two-mode quantum correlations: logarithmic negativity and Gaussian discord.
//!
//! The discord closed form is stated in the vacuum-variance-1 convention,
//! so it is evaluated on `σ = 2·C`. Results are in nats.

use crate::error::{Error, Result};
use crate::gaussian::{TwoModeCm, PHYSICALITY_TOL};
use crate::sync::trapezoid_mean;

/// `−ln 2ν̃_−` below this is treated as a positive partial transpose.
pub const PPT_MARGIN: f64 = 1e-12;

/// Which mode is measured when minimizing the conditional entropy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MeasuredMode {
    /// Measure the second mode (the second mechanical resonator).
    #[default]
    Second,
    First,
    /// Smaller of the two one-sided values.
    Either,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationSample {
    pub t: f64,
    pub discord: f64,
    pub log_negativity: f64,
}

impl CorrelationSample {
    pub fn evaluate(t: f64, pair: &TwoModeCm) -> Result<Self> {
        Ok(CorrelationSample {
            t,
            discord: gaussian_discord(pair)?,
            log_negativity: log_negativity(pair)?,
        })
    }
}

/// `E_N = max(0, −ln 2ν̃_−)` with `ν̃_−` from the partial transpose.
pub fn log_negativity(pair: &TwoModeCm) -> Result<f64> {
    pair.check_physical(PHYSICALITY_TOL)?;
    let (nu_minus_pt, _) = pair.partial_transpose().symplectic_spectrum();
    let value = -(2.0 * nu_minus_pt).ln();
    // Pure product states sit exactly on the PPT boundary; ignore round-off.
    Ok(if value > PPT_MARGIN { value } else { 0.0 })
}

/// Von Neumann entropy of a thermal mode with symplectic eigenvalue `x`
/// (vacuum-1 convention).
pub fn entropy_fn(x: f64) -> f64 {
    let plus = 0.5 * (x + 1.0);
    let minus = 0.5 * (x - 1.0);
    let h = |y: f64| if y > 0.0 { y * y.ln() } else { 0.0 };
    h(plus) - h(minus)
}

/// Minimal determinant of the conditional state of the first mode over all
/// single-mode Gaussian measurements on the second, vacuum-1 convention.
/// Inputs are the invariants `A, B, C, D` of `σ = 2·C`.
pub(crate) fn min_conditional_det(a: f64, b: f64, c: f64, d: f64) -> f64 {
    if (b - 1.0).abs() < 1e-10 {
        // A pure marginal is uncorrelated; the measurement leaves mode 1 alone.
        return a;
    }
    let c2 = c * c;
    let dab = d - a * b;
    if dab * dab <= (1.0 + b) * c2 * (a + d) {
        let inner = (c2 + (b - 1.0) * (d - a)).max(0.0);
        (2.0 * c2 + (b - 1.0) * (d - a) + 2.0 * c.abs() * inner.sqrt()) / ((b - 1.0) * (b - 1.0))
    } else {
        let inner = (c2 * c2 + dab * dab - 2.0 * c2 * (a * b + d)).max(0.0);
        (a * b - c2 + d - inner.sqrt()) / (2.0 * b)
    }
}

fn one_sided_discord(pair: &TwoModeCm) -> f64 {
    let sigma = TwoModeCm(pair.0 * 2.0);
    let (a, b, c, d) = sigma.invariants();
    let (nu_minus, nu_plus) = sigma.symplectic_spectrum();
    let e_min = min_conditional_det(a, b, c, d).max(1.0);
    let value = entropy_fn(b.max(1.0).sqrt()) - entropy_fn(nu_minus.max(1.0))
        - entropy_fn(nu_plus.max(1.0))
        + entropy_fn(e_min.sqrt());
    value.max(0.0)
}

/// Gaussian discord with the measurement on the second mode.
pub fn gaussian_discord(pair: &TwoModeCm) -> Result<f64> {
    gaussian_discord_measuring(pair, MeasuredMode::Second)
}

pub fn gaussian_discord_measuring(pair: &TwoModeCm, side: MeasuredMode) -> Result<f64> {
    pair.check_physical(PHYSICALITY_TOL)?;
    let value = match side {
        MeasuredMode::Second => one_sided_discord(pair),
        MeasuredMode::First => one_sided_discord(&pair.swapped()),
        MeasuredMode::Either => one_sided_discord(pair).min(one_sided_discord(&pair.swapped())),
    };
    if value < -1e-9 {
        return Err(Error::NonPhysical {
            min_eigenvalue: pair.min_physical_eigenvalue(),
        });
    }
    Ok(value.max(0.0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationAverage {
    pub discord: f64,
    pub log_negativity: f64,
}

pub fn time_average(series: &[CorrelationSample], window: (f64, f64)) -> Result<CorrelationAverage> {
    let times: Vec<f64> = series.iter().map(|s| s.t).collect();
    let d: Vec<f64> = series.iter().map(|s| s.discord).collect();
    let e: Vec<f64> = series.iter().map(|s| s.log_negativity).collect();
    Ok(CorrelationAverage {
        discord: trapezoid_mean(&times, &d, window.0, window.1)?,
        log_negativity: trapezoid_mean(&times, &e, window.0, window.1)?,
    })
}

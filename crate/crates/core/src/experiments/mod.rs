//! Figure-level experiments: a single pair trace, coupling and temperature
//! sweeps, the distance profile of a ring, and the anti-symmetric mode check.
//!
//! Every experiment is a pure function of its [`ExperimentConfig`]; sweep
//! points run on a rayon pool and are returned in grid order.

mod config;
mod output;

pub use config::{
    apply_override, ChainConfig, Experiment, ExperimentConfig, OuConfig, ParamsConfig, SweepConfig,
};
pub use output::render_csv;

use nalgebra::Matrix2;
use rayon::prelude::*;

use crate::dynamics::{self, DistanceRecorder, JointState, RunSummary, SyncRecord};
use crate::error::Result;
use crate::gaussian::PHYSICALITY_TOL;
use crate::model::SystemParams;
use crate::sync::{check_bounds, BoundReport};

/// Tolerance of the per-sample bound checks.
pub const BOUND_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct PairTrace {
    pub record: SyncRecord,
    pub bounds: Vec<BoundReport>,
    pub summary: RunSummary,
}

impl PairTrace {
    pub fn min_physical_eigenvalue(&self) -> f64 {
        self.record.min_physical_eigenvalue.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn any_squeezed(&self) -> bool {
        self.bounds.iter().any(|b| b.squeezing == Some(true))
    }
}

pub fn pair_trace(cfg: &ExperimentConfig) -> Result<PairTrace> {
    pair_trace_with(&cfg.params.to_pair()?, &cfg.integrator)
}

pub fn pair_trace_with(params: &SystemParams, integrator: &dynamics::IntegratorConfig) -> Result<PairTrace> {
    let record = dynamics::run(params, integrator)?;
    let bounds = record.sync.iter().map(|s| check_bounds(s, BOUND_TOL)).collect();
    let summary = record.summary()?;
    Ok(PairTrace {
        record,
        bounds,
        summary,
    })
}

/// Time averages of one successful sweep point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointSummary {
    pub summary: RunSummary,
    pub min_physical_eigenvalue: f64,
    pub bounds_ok: bool,
    pub squeezed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    /// The error message if the run failed (divergence, lost physicality,
    /// no limit cycle).
    pub outcome: std::result::Result<PointSummary, String>,
}

impl SweepPoint {
    pub fn ok(&self) -> Option<&PointSummary> {
        self.outcome.as_ref().ok()
    }
}

fn sweep(
    values: &[f64],
    integrator: &dynamics::IntegratorConfig,
    make: impl Fn(f64) -> SystemParams + Sync,
) -> Vec<SweepPoint> {
    values
        .par_iter()
        .map(|&value| {
            let outcome = pair_trace_with(&make(value), integrator)
                .map(|t| PointSummary {
                    summary: t.summary,
                    min_physical_eigenvalue: t.min_physical_eigenvalue(),
                    bounds_ok: t.bounds.iter().all(|b| b.heisenberg_ok),
                    squeezed: t.any_squeezed(),
                })
                .map_err(|e| e.to_string());
            SweepPoint { value, outcome }
        })
        .collect()
}

pub fn sweep_mu(cfg: &ExperimentConfig) -> Result<Vec<SweepPoint>> {
    let base = cfg.params.to_pair()?;
    Ok(sweep(&cfg.sweep.mu, &cfg.integrator, |mu| SystemParams { mu, ..base.clone() }))
}

pub fn sweep_nb(cfg: &ExperimentConfig) -> Result<Vec<SweepPoint>> {
    let base = cfg.params.to_pair()?;
    Ok(sweep(&cfg.sweep.n_b, &cfg.integrator, |n_b| SystemParams { n_b, ..base.clone() }))
}

/// Time-averaged `S_c` between sites `0` and `h` of a ring, `h = 1..N−1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainProfile {
    pub s_c: Vec<f64>,
}

impl ChainProfile {
    pub fn sites(&self) -> usize {
        self.s_c.len() + 1
    }

    pub fn at(&self, h: usize) -> f64 {
        self.s_c[h - 1]
    }

    /// `(h, S̄_c(h), S̄_c(N − h))` for `h = 1..N/2`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        let n = self.sites();
        (1..=n / 2).map(move |h| (h, self.at(h), self.at(n - h)))
    }
}

pub fn chain(cfg: &ExperimentConfig) -> Result<ChainProfile> {
    let params = cfg.chain.params(&cfg.params)?;
    let integrator = cfg.chain.integrator(&cfg.integrator);
    let mut rec = DistanceRecorder::new(params.n_sites());
    dynamics::run_observed(&params, &integrator, JointState::initial(&params), &mut rec)?;
    Ok(ChainProfile { s_c: rec.averages()? })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OuReport {
    pub analytic: Matrix2<f64>,
    pub numerical: Matrix2<f64>,
    pub max_deviation: f64,
    /// `Σ_pp − Σ_qq` of the closed form.
    pub anisotropy: f64,
    pub bound_holds: bool,
}

pub fn ou_check(cfg: &ExperimentConfig) -> Result<OuReport> {
    let model = cfg.ou.model();
    let analytic = dynamics::ou_steady_state(&model)?;
    let numerical = dynamics::ou_integrate(&model, cfg.ou.dt, cfg.ou.t_end)?;
    Ok(OuReport {
        analytic,
        numerical,
        max_deviation: (analytic - numerical).amax(),
        anisotropy: analytic[(1, 1)] - analytic[(0, 0)],
        bound_holds: analytic[(1, 1)] >= analytic[(0, 0)] - PHYSICALITY_TOL,
    })
}

#[derive(Clone, Debug)]
pub enum Outcome {
    PairTrace(Box<PairTrace>),
    SweepMu(Vec<SweepPoint>),
    SweepNb(Vec<SweepPoint>),
    Chain(ChainProfile),
    OuCheck(OuReport),
}

impl Outcome {
    /// Sweep points that did not complete.
    pub fn failed_points(&self) -> usize {
        match self {
            Outcome::SweepMu(p) | Outcome::SweepNb(p) => p.iter().filter(|p| p.outcome.is_err()).count(),
            _ => 0,
        }
    }
}

pub fn execute(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.validate()?;
    Ok(match cfg.experiment {
        Experiment::PairTrace => Outcome::PairTrace(Box::new(pair_trace(cfg)?)),
        Experiment::SweepMu => Outcome::SweepMu(sweep_mu(cfg)?),
        Experiment::SweepNb => Outcome::SweepNb(sweep_nb(cfg)?),
        Experiment::Chain => Outcome::Chain(chain(cfg)?),
        Experiment::OuCheck => Outcome::OuCheck(ou_check(cfg)?),
    })
}

//! Joint propagation of the classical means and the fluctuation covariance.
//!
//! The classical amplitudes follow the mean-field equations and the
//! covariance obeys `dC/dt = A(t)·C + C·A(t)ᵀ + D`, where the drift `A(t)`
//! is rebuilt from the classical state at every Runge–Kutta stage. Noise only
//! enters through `D`; the linear Gaussian dynamics needs no sampling.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2};
use serde::{Deserialize, Serialize};

use crate::correlations::{self, CorrelationAverage, CorrelationSample};
use crate::error::{Error, Result};
use crate::gaussian::{extract_pair, vacuum_cm, CovarianceMatrix, ModeId, PHYSICALITY_TOL};
use crate::model::{classical_rhs_into, diffusion_diagonal, ClassicalState, SparseDrift, SystemParams, Topology, C64};
use crate::sync::{self, SyncAverage, SyncSample};

/// Amplitude of the initial mechanical kick that breaks the symmetry.
pub const INITIAL_KICK: f64 = 0.1;

/// A run whose mechanical amplitudes move slower than this (relative to
/// `max(1, |β|)`) over the last transient period has no limit cycle.
pub const LIMIT_CYCLE_RATE_FLOOR: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegratorConfig {
    /// RK4 steps per reference period `τ = 2π/ω_1`.
    pub steps_per_period: u32,
    /// Discarded transient, in periods.
    pub transient_periods: f64,
    /// Recording window, in periods.
    pub record_periods: f64,
    /// Samples taken per period while recording.
    pub samples_per_period: u32,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            steps_per_period: 1000,
            transient_periods: 1000.0,
            record_periods: 500.0,
            samples_per_period: 20,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if self.steps_per_period == 0 || self.samples_per_period == 0 {
            return bad("steps_per_period and samples_per_period must be positive".into());
        }
        if self.steps_per_period % self.samples_per_period != 0 {
            return bad(format!(
                "samples_per_period ({}) must divide steps_per_period ({})",
                self.samples_per_period, self.steps_per_period
            ));
        }
        if !(self.record_periods > 0.0) || !(self.transient_periods >= 0.0) {
            return bad("record_periods must be positive and transient_periods non-negative".into());
        }
        Ok(())
    }

    fn transient_steps(&self) -> u64 {
        (self.transient_periods * self.steps_per_period as f64).round() as u64
    }

    fn record_steps(&self) -> u64 {
        (self.record_periods * self.steps_per_period as f64).round() as u64
    }

    fn stride(&self) -> u64 {
        (self.steps_per_period / self.samples_per_period) as u64
    }
}

/// Reference period `τ = 2π/ω_1`.
pub fn period(params: &SystemParams) -> f64 {
    2.0 * PI / params.omega[0]
}

#[derive(Clone, Debug, PartialEq)]
pub struct JointState {
    pub t: f64,
    pub classical: ClassicalState,
    pub cm: CovarianceMatrix,
}

impl JointState {
    /// Empty cavities, mechanical amplitudes kicked to `0.1·e^{iθ_j}`, and
    /// bath-matched fluctuations. Pair sites get distinct kick phases so
    /// locking has to emerge; ring sites share one kick, which keeps the
    /// classical solution on the uniform mean-field manifold.
    pub fn initial(params: &SystemParams) -> Self {
        let n = params.n_sites();
        let mut classical = ClassicalState::zeros(n);
        for (j, b) in classical.beta.iter_mut().enumerate() {
            let theta = match params.topology {
                Topology::Ring { .. } => 0.0,
                _ => PI * j as f64 / 2.0,
            };
            *b = C64::from_polar(INITIAL_KICK, theta);
        }
        JointState {
            t: 0.0,
            classical,
            cm: vacuum_cm(params.layout(), params.n_b),
        }
    }

    /// Same as [`JointState::initial`] but with an explicit classical state.
    pub fn with_classical(params: &SystemParams, classical: ClassicalState) -> Self {
        JointState {
            t: 0.0,
            classical,
            cm: vacuum_cm(params.layout(), params.n_b),
        }
    }
}

/// Allocation-free RK4 stepper over the joint system.
pub struct Propagator<'p> {
    params: &'p SystemParams,
    n: usize,
    drift: SparseDrift,
    diffusion: Vec<f64>,
    // classical stage buffers
    c_stage: ClassicalState,
    c_k: [ClassicalState; 4],
    // covariance stage buffers (column-major, symmetric)
    m_stage: Vec<f64>,
    m_k: [Vec<f64>; 4],
    product: Vec<f64>,
}

impl<'p> Propagator<'p> {
    pub fn new(params: &'p SystemParams) -> Self {
        let sites = params.n_sites();
        let n = 4 * sites;
        let zero = ClassicalState::zeros(sites);
        Propagator {
            params,
            n,
            drift: SparseDrift::new(&zero, params),
            diffusion: diffusion_diagonal(params).as_slice().to_vec(),
            c_stage: zero.clone(),
            c_k: [zero.clone(), zero.clone(), zero.clone(), zero],
            m_stage: vec![0.0; n * n],
            m_k: [
                vec![0.0; n * n],
                vec![0.0; n * n],
                vec![0.0; n * n],
                vec![0.0; n * n],
            ],
            product: vec![0.0; n * n],
        }
    }

    /// Writes `A·C + C·Aᵀ + D` for the current drift into `out`.
    fn lyapunov_rhs(
        drift: &SparseDrift,
        diffusion: &[f64],
        n: usize,
        cov: &[f64],
        product: &mut [f64],
        out: &mut [f64],
    ) {
        // product holds M = A·C row by row; row k of C is column k since C = Cᵀ.
        product.fill(0.0);
        for ((&r, &c), &v) in drift.rows.iter().zip(&drift.cols).zip(&drift.values) {
            let dst = &mut product[r * n..(r + 1) * n];
            let src = &cov[c * n..(c + 1) * n];
            for (d, s) in dst.iter_mut().zip(src) {
                *d += v * s;
            }
        }
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = product[i * n + j] + product[j * n + i];
            }
            out[i * n + i] += diffusion[i];
        }
    }

    fn eval(&mut self, stage: usize, use_stage: bool, base: &JointState) {
        let classical = if use_stage { &self.c_stage } else { &base.classical };
        classical_rhs_into(classical, self.params, &mut self.c_k[stage]);
        self.drift.refill(classical, self.params);
        let cov: &[f64] = if use_stage {
            &self.m_stage
        } else {
            base.cm.matrix().as_slice()
        };
        Self::lyapunov_rhs(
            &self.drift,
            &self.diffusion,
            self.n,
            cov,
            &mut self.product,
            &mut self.m_k[stage],
        );
    }

    fn prepare_stage(&mut self, base: &JointState, stage: usize, h: f64) {
        let k = &self.c_k[stage];
        for j in 0..base.classical.n_sites() {
            self.c_stage.alpha[j] = base.classical.alpha[j] + k.alpha[j] * h;
            self.c_stage.beta[j] = base.classical.beta[j] + k.beta[j] * h;
        }
        let cov = base.cm.matrix().as_slice();
        for ((s, c), d) in self.m_stage.iter_mut().zip(cov).zip(&self.m_k[stage]) {
            *s = c + h * d;
        }
    }

    /// One fourth-order step of size `dt`, in place.
    pub fn step(&mut self, state: &mut JointState, dt: f64) {
        self.eval(0, false, state);
        self.prepare_stage(state, 0, 0.5 * dt);
        self.eval(1, true, state);
        self.prepare_stage(state, 1, 0.5 * dt);
        self.eval(2, true, state);
        self.prepare_stage(state, 2, dt);
        self.eval(3, true, state);

        let w = dt / 6.0;
        let [k1, k2, k3, k4] = &self.c_k;
        for j in 0..state.classical.n_sites() {
            state.classical.alpha[j] +=
                (k1.alpha[j] + (k2.alpha[j] + k3.alpha[j]) * 2.0 + k4.alpha[j]) * w;
            state.classical.beta[j] +=
                (k1.beta[j] + (k2.beta[j] + k3.beta[j]) * 2.0 + k4.beta[j]) * w;
        }
        let [m1, m2, m3, m4] = &self.m_k;
        let n = self.n;
        let cov = state.cm.matrix_mut().as_mut_slice();
        for idx in 0..n * n {
            cov[idx] += w * (m1[idx] + 2.0 * (m2[idx] + m3[idx]) + m4[idx]);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (cov[j * n + i] + cov[i * n + j]);
                cov[j * n + i] = v;
                cov[i * n + j] = v;
            }
        }
        state.t += dt;
    }

    /// Largest `|dβ_j/dt| / max(1, |β_j|)` at the given state.
    fn mechanical_rate(&mut self, state: &ClassicalState) -> f64 {
        classical_rhs_into(state, self.params, &mut self.c_k[0]);
        self.c_k[0]
            .beta
            .iter()
            .zip(&state.beta)
            .map(|(d, b)| d.norm() / b.norm().max(1.0))
            .fold(0.0, f64::max)
    }
}

/// A single RK4 step on a standalone state.
pub fn step(state: &JointState, params: &SystemParams, dt: f64) -> Result<JointState> {
    params.validate()?;
    let mut next = state.clone();
    Propagator::new(params).step(&mut next, dt);
    check_finite(&next)?;
    Ok(next)
}

fn check_finite(state: &JointState) -> Result<()> {
    if !state.classical.is_finite() {
        return Err(Error::Divergence {
            t: state.t,
            what: "classical amplitudes",
        });
    }
    if state.cm.matrix().iter().any(|v| !v.is_finite()) {
        return Err(Error::Divergence {
            t: state.t,
            what: "covariance matrix",
        });
    }
    Ok(())
}

fn check_physical(state: &JointState) -> Result<()> {
    if state.cm.is_physical(PHYSICALITY_TOL) {
        Ok(())
    } else {
        Err(Error::PhysicalityDrift {
            t: state.t,
            min_eigenvalue: state.cm.min_physical_eigenvalue(),
        })
    }
}

/// Receives the joint state at every recorded sample.
pub trait Observer {
    fn observe(&mut self, state: &JointState) -> Result<()>;
}

/// Integrates from `initial`, discards the transient and hands every sample
/// of the recording window to `observer`. Physicality is enforced at every
/// sample and once per period during the transient. Returns the final state.
pub fn run_observed<O: Observer + ?Sized>(
    params: &SystemParams,
    cfg: &IntegratorConfig,
    initial: JointState,
    observer: &mut O,
) -> Result<JointState> {
    params.validate()?;
    cfg.validate()?;
    let tau = period(params);
    let spp = cfg.steps_per_period as u64;
    let dt = tau / spp as f64;
    let transient = cfg.transient_steps();
    let total = transient + cfg.record_steps();
    let stride = cfg.stride();

    let mut prop = Propagator::new(params);
    let mut state = initial;
    let t0 = state.t;
    let mut max_rate: f64 = 0.0;
    let check_cycle = transient >= spp;

    for s in 0..=total {
        if s > 0 {
            prop.step(&mut state, dt);
            // Exact grid times keep samples aligned across runs.
            state.t = t0 + s as f64 * dt;
            if !state.classical.is_finite() {
                return Err(Error::Divergence {
                    t: state.t,
                    what: "classical amplitudes",
                });
            }
        }
        if check_cycle && s + spp > transient && s <= transient {
            max_rate = max_rate.max(prop.mechanical_rate(&state.classical));
            if s == transient && max_rate < LIMIT_CYCLE_RATE_FLOOR {
                return Err(Error::NoLimitCycle { max_rate });
            }
        }
        if s < transient {
            if s % spp == 0 {
                check_finite(&state)?;
                check_physical(&state)?;
            }
        } else if (s - transient) % stride == 0 {
            check_finite(&state)?;
            check_physical(&state)?;
            observer.observe(&state)?;
        }
    }
    Ok(state)
}

/// Classical orbit sample kept for phase diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSample {
    pub t: f64,
    pub alpha: Vec<C64>,
    pub beta: Vec<C64>,
}

/// Everything recorded for one mechanical pair.
#[derive(Clone, Debug, Default)]
pub struct SyncRecord {
    pub sync: Vec<SyncSample>,
    pub correlations: Vec<CorrelationSample>,
    pub orbits: Vec<OrbitSample>,
    /// Largest |entry| of the mechanical cross-covariance block per sample.
    pub cross_covariance: Vec<f64>,
    /// Smallest eigenvalue of `C + iΩ/2` per sample (full matrix).
    pub min_physical_eigenvalue: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunSummary {
    pub window: (f64, f64),
    pub sync: SyncAverage,
    pub correlations: CorrelationAverage,
}

impl SyncRecord {
    pub fn window(&self) -> Option<(f64, f64)> {
        Some((self.sync.first()?.t, self.sync.last()?.t))
    }

    /// Time averages over the whole recording window.
    pub fn summary(&self) -> Result<RunSummary> {
        let window = self.window().ok_or(Error::WindowOutOfRange {
            t0: f64::NAN,
            t1: f64::NAN,
            first: f64::NAN,
            last: f64::NAN,
        })?;
        Ok(RunSummary {
            window,
            sync: sync::time_average(&self.sync, window)?,
            correlations: correlations::time_average(&self.correlations, window)?,
        })
    }
}

/// Records synchronization and correlation measures between two mechanical
/// modes.
pub struct PairRecorder {
    pub first: ModeId,
    pub second: ModeId,
    pub record: SyncRecord,
}

impl PairRecorder {
    pub fn new(first: ModeId, second: ModeId) -> Self {
        PairRecorder {
            first,
            second,
            record: SyncRecord::default(),
        }
    }
}

impl Observer for PairRecorder {
    fn observe(&mut self, state: &JointState) -> Result<()> {
        let pair = extract_pair(&state.cm, self.first, self.second)?;
        let b1 = state.classical.beta[self.first.site];
        let b2 = state.classical.beta[self.second.site];
        let r = &mut self.record;
        r.sync.push(SyncSample::evaluate(state.t, &pair, b1, b2)?);
        r.correlations.push(CorrelationSample::evaluate(state.t, &pair)?);
        r.orbits.push(OrbitSample {
            t: state.t,
            alpha: state.classical.alpha.clone(),
            beta: state.classical.beta.clone(),
        });
        r.cross_covariance.push(pair.cross().amax());
        r.min_physical_eigenvalue.push(state.cm.min_physical_eigenvalue());
        Ok(())
    }
}

/// Synchronization between the two mechanical resonators of a pair (or the
/// first two sites of any topology).
pub fn run(params: &SystemParams, cfg: &IntegratorConfig) -> Result<SyncRecord> {
    run_from(params, cfg, JointState::initial(params))
}

pub fn run_from(params: &SystemParams, cfg: &IntegratorConfig, initial: JointState) -> Result<SyncRecord> {
    if params.n_sites() < 2 {
        return Err(Error::InvalidParams("a synchronization run needs two sites".into()));
    }
    let mut rec = PairRecorder::new(ModeId::mechanical(0), ModeId::mechanical(1));
    run_observed(params, cfg, initial, &mut rec)?;
    Ok(rec.record)
}

/// Complete-synchronization series between mechanical mode 0 and every
/// other site, for translation-invariant rings.
pub struct DistanceRecorder {
    pub times: Vec<f64>,
    /// `s_c[h − 1][k]`: distance `h`, sample `k`.
    pub s_c: Vec<Vec<f64>>,
}

impl DistanceRecorder {
    pub fn new(n_sites: usize) -> Self {
        DistanceRecorder {
            times: Vec::new(),
            s_c: vec![Vec::new(); n_sites.saturating_sub(1)],
        }
    }

    /// Time-averaged `S_c(h)` for `h = 1..N−1`.
    pub fn averages(&self) -> Result<Vec<f64>> {
        let (t0, t1) = match (self.times.first(), self.times.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => return Ok(Vec::new()),
        };
        self.s_c
            .iter()
            .map(|series| sync::trapezoid_mean(&self.times, series, t0, t1))
            .collect()
    }
}

impl Observer for DistanceRecorder {
    fn observe(&mut self, state: &JointState) -> Result<()> {
        self.times.push(state.t);
        for (h, series) in self.s_c.iter_mut().enumerate() {
            let pair = extract_pair(&state.cm, ModeId::mechanical(0), ModeId::mechanical(h + 1))?;
            series.push(sync::s_complete(&pair)?.s_c);
        }
        Ok(())
    }
}

/// Linearized symmetric/anti-symmetric mode model with phase-insensitive
/// noise: `M = [[−γ_eff, −2μ], [2μ, 0]]`, diffusion `d·I`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OuModel {
    pub gamma_eff: f64,
    pub mu: f64,
    pub d: f64,
}

impl OuModel {
    pub fn drift(&self) -> Matrix2<f64> {
        Matrix2::new(-self.gamma_eff, -2.0 * self.mu, 2.0 * self.mu, 0.0)
    }

    fn validate(&self) -> Result<()> {
        if !(self.gamma_eff > 0.0) || !(self.d >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "need gamma_eff > 0 and d >= 0, got {} and {}",
                self.gamma_eff, self.d
            )));
        }
        if self.mu == 0.0 || !self.mu.is_finite() {
            return Err(Error::NoSteadyState(
                "mu = 0 leaves the phase quadrature undamped".into(),
            ));
        }
        Ok(())
    }
}

/// Closed-form stationary covariance of the anti-symmetric mode model:
/// `Σ_qq = d/γ`, `Σ_pp = d/γ + γd/(8μ²)`, `Σ_qp = −d/(4μ)`.
pub fn ou_steady_state(model: &OuModel) -> Result<Matrix2<f64>> {
    model.validate()?;
    let OuModel { gamma_eff: g, mu, d } = *model;
    let qq = d / g;
    let pp = d / g + g * d / (8.0 * mu * mu);
    let qp = -d / (4.0 * mu);
    Ok(Matrix2::new(qq, qp, qp, pp))
}

/// Integrates `dΣ/dt = MΣ + ΣMᵀ + dI` from `Σ = 0` with fixed-step RK4.
pub fn ou_integrate(model: &OuModel, dt: f64, t_end: f64) -> Result<Matrix2<f64>> {
    model.validate()?;
    let m = model.drift();
    let d = Matrix2::identity() * model.d;
    let f = |s: &Matrix2<f64>| m * s + s * m.transpose() + d;
    let steps = (t_end / dt).ceil() as usize;
    let mut s = Matrix2::zeros();
    for _ in 0..steps {
        let k1 = f(&s);
        let k2 = f(&(s + k1 * (0.5 * dt)));
        let k3 = f(&(s + k2 * (0.5 * dt)));
        let k4 = f(&(s + k3 * dt));
        s += (k1 + (k2 + k3) * 2.0 + k4) * (dt / 6.0);
    }
    Ok(s)
}

/// Solves `A·X + X·Aᵀ + D = 0` through the vectorized Kronecker system.
pub fn solve_lyapunov(a: &DMatrix<f64>, d: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    let eye = DMatrix::<f64>::identity(n, n);
    let op = eye.kronecker(a) + a.kronecker(&eye);
    let rhs = -nalgebra::DVector::from_column_slice(d.as_slice());
    let x = op
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::NoSteadyState("singular Lyapunov operator".into()))?;
    Ok(DMatrix::from_column_slice(n, n, x.as_slice()))
}

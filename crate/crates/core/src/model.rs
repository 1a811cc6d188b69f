//! Driven optomechanical sites with phonon tunneling between mechanical modes.
//!
//! Each site `j` has an optical mode `a_j` (detuning `Δ_j`, damping `κ`,
//! drive `E`) and a mechanical mode `b_j` (frequency `ω_j`, damping `γ`,
//! bath occupation `n_b`), coupled by radiation pressure `g`. Neighbouring
//! mechanical modes exchange excitations at rate `μ`. Frequencies and rates
//! are in units of the first mechanical frequency, `ħ = 1`.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::gaussian::ModeLayout;

pub type C64 = Complex<f64>;

/// How the mechanical modes are coupled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    /// One isolated site.
    Single,
    /// Two sites sharing a single tunneling term.
    Pair,
    /// Closed nearest-neighbour ring; needs at least three sites, since a
    /// two-site ring would double-count the bond.
    Ring { sites: usize },
}

impl Topology {
    pub fn n_sites(self) -> usize {
        match self {
            Topology::Single => 1,
            Topology::Pair => 2,
            Topology::Ring { sites } => sites,
        }
    }

    /// Neighbours of site `j`, each listed once.
    pub fn neighbors(self, j: usize) -> impl Iterator<Item = usize> {
        let (first, second) = match self {
            Topology::Single => (None, None),
            Topology::Pair => (Some(1 - j), None),
            Topology::Ring { sites } => (Some((j + sites - 1) % sites), Some((j + 1) % sites)),
        };
        first.into_iter().chain(second)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemParams {
    pub topology: Topology,
    /// Mechanical frequency per site.
    pub omega: Vec<f64>,
    /// Optical detuning per site.
    pub detuning: Vec<f64>,
    pub kappa: f64,
    pub gamma: f64,
    pub g: f64,
    /// Drive amplitude `E`.
    pub drive: f64,
    /// Phonon tunneling strength.
    pub mu: f64,
    /// Mechanical bath occupation.
    pub n_b: f64,
}

impl SystemParams {
    /// The two-resonator reference point: `ω_2 = 1.005`, `γ = 0.005`,
    /// `Δ_j = ω_j`, `κ = 0.15`, `g = 0.005`, `μ = 0.02`, `n_b = 0`, `E = 320`.
    pub fn reference_pair() -> Self {
        let omega = vec![1.0, 1.005];
        SystemParams {
            topology: Topology::Pair,
            detuning: omega.clone(),
            omega,
            kappa: 0.15,
            gamma: 0.005,
            g: 0.005,
            drive: 320.0,
            mu: 0.02,
            n_b: 0.0,
        }
    }

    /// Uniform ring with mechanical frequency `omega`, detuning `Δ = ω`, and
    /// the remaining constants copied from `self`.
    pub fn ring(&self, sites: usize, omega: f64) -> Self {
        SystemParams {
            topology: Topology::Ring { sites },
            omega: vec![omega; sites],
            detuning: vec![omega; sites],
            ..self.clone()
        }
    }

    /// Site `site` of `self` on its own, no tunneling.
    pub fn isolated_site(&self, site: usize) -> Self {
        SystemParams {
            topology: Topology::Single,
            omega: vec![self.omega[site]],
            detuning: vec![self.detuning[site]],
            mu: 0.0,
            ..self.clone()
        }
    }

    pub fn n_sites(&self) -> usize {
        self.topology.n_sites()
    }

    pub fn layout(&self) -> ModeLayout {
        ModeLayout::new(self.n_sites()).expect("validated topology has sites")
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_sites();
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if let Topology::Ring { sites } = self.topology {
            if sites < 3 {
                return bad(format!("a ring needs at least 3 sites, got {sites}"));
            }
        }
        if self.omega.len() != n || self.detuning.len() != n {
            return bad(format!(
                "expected {n} mechanical frequencies and detunings, got {} and {}",
                self.omega.len(),
                self.detuning.len()
            ));
        }
        let finite = self.omega.iter().chain(&self.detuning).all(|v| v.is_finite())
            && [self.kappa, self.gamma, self.g, self.drive, self.mu, self.n_b]
                .iter()
                .all(|v| v.is_finite());
        if !finite {
            return bad("parameters must be finite".into());
        }
        if !(self.kappa > 0.0) {
            return bad(format!("kappa must be positive, got {}", self.kappa));
        }
        if !(self.gamma > 0.0) {
            return bad(format!("gamma must be positive, got {}", self.gamma));
        }
        if self.n_b < 0.0 {
            return bad(format!("n_b must be non-negative, got {}", self.n_b));
        }
        if self.drive < 0.0 {
            return bad(format!("drive must be non-negative, got {}", self.drive));
        }
        Ok(())
    }
}

/// Mean optical and mechanical amplitudes, one entry per site.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalState {
    pub alpha: Vec<C64>,
    pub beta: Vec<C64>,
}

impl ClassicalState {
    pub fn zeros(n_sites: usize) -> Self {
        ClassicalState {
            alpha: vec![C64::new(0.0, 0.0); n_sites],
            beta: vec![C64::new(0.0, 0.0); n_sites],
        }
    }

    pub fn n_sites(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_finite(&self) -> bool {
        self.alpha
            .iter()
            .chain(&self.beta)
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Quadrature-like real coordinates `√2·(Re α, Im α, Re β, Im β)` per site,
    /// matching the covariance ordering.
    pub fn to_quadratures(&self) -> DVector<f64> {
        let s = std::f64::consts::SQRT_2;
        DVector::from_iterator(
            4 * self.n_sites(),
            self.alpha
                .iter()
                .zip(&self.beta)
                .flat_map(|(a, b)| [s * a.re, s * a.im, s * b.re, s * b.im]),
        )
    }

    pub fn from_quadratures(x: &DVector<f64>) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let n = x.len() / 4;
        ClassicalState {
            alpha: (0..n)
                .map(|j| C64::new(s * x[4 * j], s * x[4 * j + 1]))
                .collect(),
            beta: (0..n)
                .map(|j| C64::new(s * x[4 * j + 2], s * x[4 * j + 3]))
                .collect(),
        }
    }
}

/// Mean-field vector field of the Langevin equations (`⟨a†a⟩ → |α|²`).
pub fn classical_rhs(state: &ClassicalState, params: &SystemParams) -> ClassicalState {
    let mut out = ClassicalState::zeros(state.n_sites());
    classical_rhs_into(state, params, &mut out);
    out
}

pub(crate) fn classical_rhs_into(state: &ClassicalState, p: &SystemParams, out: &mut ClassicalState) {
    let i = C64::new(0.0, 1.0);
    for j in 0..state.n_sites() {
        let (a, b) = (state.alpha[j], state.beta[j]);
        let shift = p.detuning[j] + 2.0 * p.g * b.re;
        out.alpha[j] = C64::new(-p.kappa, shift) * a + p.drive;
        let tunnel: C64 = p.topology.neighbors(j).map(|k| state.beta[k]).sum();
        out.beta[j] =
            C64::new(-p.gamma, -p.omega[j]) * b + i * (p.g * a.norm_sqr()) + i * p.mu * tunnel;
    }
}

/// Index of quadrature rows for site `j`: (q_a, p_a, q_b, p_b).
fn rows(j: usize) -> (usize, usize, usize, usize) {
    (4 * j, 4 * j + 1, 4 * j + 2, 4 * j + 3)
}

/// Visits every structurally non-zero entry of the drift matrix. The visiting
/// order depends only on the topology, never on the state.
pub(crate) fn for_each_drift_entry(
    state: &ClassicalState,
    p: &SystemParams,
    mut push: impl FnMut(usize, usize, f64),
) {
    for j in 0..p.n_sites() {
        let (qa, pa, qb, pb) = rows(j);
        let alpha = state.alpha[j];
        let shift = p.detuning[j] + 2.0 * p.g * state.beta[j].re;
        let (gr, gi) = (2.0 * p.g * alpha.re, 2.0 * p.g * alpha.im);

        push(qa, qa, -p.kappa);
        push(qa, pa, -shift);
        push(pa, qa, shift);
        push(pa, pa, -p.kappa);

        push(qa, qb, -gi);
        push(pa, qb, gr);

        push(qb, qb, -p.gamma);
        push(qb, pb, p.omega[j]);
        push(pb, qb, -p.omega[j]);
        push(pb, pb, -p.gamma);

        push(pb, qa, gr);
        push(pb, pa, gi);

        for k in p.topology.neighbors(j) {
            let (_, _, qbk, pbk) = rows(k);
            push(qb, pbk, -p.mu);
            push(pb, qbk, p.mu);
        }
    }
}

/// Drift matrix `A(t)` of the linearized fluctuations around `state`.
pub fn drift_matrix(state: &ClassicalState, params: &SystemParams) -> DMatrix<f64> {
    let n = 4 * params.n_sites();
    let mut a = DMatrix::zeros(n, n);
    for_each_drift_entry(state, params, |r, c, v| a[(r, c)] += v);
    a
}

/// Diagonal of the diffusion matrix: `κ` on optical quadratures,
/// `γ(2n_b + 1)` on mechanical ones.
pub fn diffusion_diagonal(params: &SystemParams) -> DVector<f64> {
    let n = 4 * params.n_sites();
    let mech = params.gamma * (2.0 * params.n_b + 1.0);
    DVector::from_iterator(n, (0..n).map(|i| if i % 4 < 2 { params.kappa } else { mech }))
}

pub fn diffusion_matrix(params: &SystemParams) -> DMatrix<f64> {
    DMatrix::from_diagonal(&diffusion_diagonal(params))
}

/// Fixed sparse pattern of the drift matrix, refilled in place.
#[derive(Clone, Debug)]
pub(crate) struct SparseDrift {
    pub(crate) rows: Vec<usize>,
    pub(crate) cols: Vec<usize>,
    pub(crate) values: Vec<f64>,
}

impl SparseDrift {
    pub(crate) fn new(state: &ClassicalState, params: &SystemParams) -> Self {
        let mut d = SparseDrift {
            rows: Vec::new(),
            cols: Vec::new(),
            values: Vec::new(),
        };
        for_each_drift_entry(state, params, |r, c, v| {
            d.rows.push(r);
            d.cols.push(c);
            d.values.push(v);
        });
        d
    }

    pub(crate) fn refill(&mut self, state: &ClassicalState, params: &SystemParams) {
        let mut k = 0;
        let values = &mut self.values;
        for_each_drift_entry(state, params, |_, _, v| {
            values[k] = v;
            k += 1;
        });
    }
}

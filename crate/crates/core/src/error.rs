use std::path::PathBuf;

use crate::gaussian::ModeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("covariance matrix is not physical: min eig(C + iΩ/2) = {min_eigenvalue:e}")]
    NonPhysical { min_eigenvalue: f64 },

    #[error("smallest symplectic eigenvalue {nu_minus} is below the vacuum value 1/2")]
    SubVacuumSymplectic { nu_minus: f64 },

    #[error("mode {mode} is outside a layout with {n_sites} site(s)")]
    ModeOutOfRange { mode: ModeId, n_sites: usize },

    #[error("a mode pair needs two distinct modes, got {0} twice")]
    SameMode(ModeId),

    #[error("matrix dimension {got} does not match the expected {expected}")]
    Dimension { expected: usize, got: usize },

    #[error("matrix is not symmetric (|C_ij - C_ji| = {asymmetry:e})")]
    Asymmetric { asymmetry: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("integration diverged at t = {t}: non-finite entry in {what}")]
    Divergence { t: f64, what: &'static str },

    #[error("physicality lost at t = {t}: min eig(C + iΩ/2) = {min_eigenvalue:e}")]
    PhysicalityDrift { t: f64, min_eigenvalue: f64 },

    #[error("no limit cycle: mechanical amplitudes settled to a fixed point (max |dβ/dt| = {max_rate:e} over the last period)")]
    NoLimitCycle { max_rate: f64 },

    #[error("drift matrix is not Hurwitz; no steady state exists ({0})")]
    NoSteadyState(String),

    #[error("averaging window [{t0}, {t1}] is outside the sampled range [{first}, {last}]")]
    WindowOutOfRange {
        t0: f64,
        t1: f64,
        first: f64,
        last: f64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

//! TOML experiment configuration with `section.key=value` overrides.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynamics::{IntegratorConfig, OuModel};
use crate::error::{Error, Result};
use crate::model::{SystemParams, Topology};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    #[default]
    PairTrace,
    SweepMu,
    SweepNb,
    Chain,
    OuCheck,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::PairTrace,
        Experiment::SweepMu,
        Experiment::SweepNb,
        Experiment::Chain,
        Experiment::OuCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::PairTrace => "pair-trace",
            Experiment::SweepMu => "sweep-mu",
            Experiment::SweepNb => "sweep-nb",
            Experiment::Chain => "chain",
            Experiment::OuCheck => "ou-check",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment `{s}`")))
    }
}

/// Physical parameters of the coupled pair. The chain reuses `kappa`,
/// `gamma`, `g`, `mu` and `n_b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamsConfig {
    pub omega: Vec<f64>,
    /// Defaults to `omega` (driving on the blue mechanical sideband).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detuning: Option<Vec<f64>>,
    pub kappa: f64,
    pub gamma: f64,
    pub g: f64,
    pub drive: f64,
    pub mu: f64,
    pub n_b: f64,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        let p = SystemParams::reference_pair();
        ParamsConfig {
            omega: p.omega,
            detuning: None,
            kappa: p.kappa,
            gamma: p.gamma,
            g: p.g,
            drive: p.drive,
            mu: p.mu,
            n_b: p.n_b,
        }
    }
}

impl ParamsConfig {
    pub fn to_pair(&self) -> Result<SystemParams> {
        let p = SystemParams {
            topology: Topology::Pair,
            omega: self.omega.clone(),
            detuning: self.detuning.clone().unwrap_or_else(|| self.omega.clone()),
            kappa: self.kappa,
            gamma: self.gamma,
            g: self.g,
            drive: self.drive,
            mu: self.mu,
            n_b: self.n_b,
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub mu: Vec<f64>,
    pub n_b: Vec<f64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            mu: (0..=20).map(|k| k as f64 * 0.002).collect(),
            n_b: vec![0.0, 1.0, 2.0, 5.0, 10.0, 20.0],
        }
    }
}

/// Closed ring of identical sites. Rates not listed here come from `[params]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChainConfig {
    pub sites: usize,
    pub omega: f64,
    /// Chosen so that a single site settles on a stable limit cycle.
    pub drive: f64,
    pub transient_periods: f64,
    pub record_periods: f64,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig {
            sites: 20,
            omega: 1.0,
            drive: 50.0,
            transient_periods: 300.0,
            record_periods: 200.0,
        }
    }
}

impl ChainConfig {
    pub fn params(&self, base: &ParamsConfig) -> Result<SystemParams> {
        let mut p = base.to_pair()?.ring(self.sites, self.omega);
        p.drive = self.drive;
        p.validate()?;
        Ok(p)
    }

    pub fn integrator(&self, base: &IntegratorConfig) -> IntegratorConfig {
        IntegratorConfig {
            transient_periods: self.transient_periods,
            record_periods: self.record_periods,
            ..*base
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OuConfig {
    pub gamma_eff: f64,
    pub mu: f64,
    pub d: f64,
    pub dt: f64,
    pub t_end: f64,
}

impl Default for OuConfig {
    fn default() -> Self {
        OuConfig {
            gamma_eff: 0.01,
            mu: 0.02,
            d: 0.001,
            dt: 0.05,
            t_end: 4000.0,
        }
    }
}

impl OuConfig {
    pub fn model(&self) -> OuModel {
        OuModel {
            gamma_eff: self.gamma_eff,
            mu: self.mu,
            d: self.d,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub params: ParamsConfig,
    pub integrator: IntegratorConfig,
    pub sweep: SweepConfig,
    pub chain: ChainConfig,
    pub ou: OuConfig,
}

impl ExperimentConfig {
    pub fn for_experiment(experiment: Experiment) -> Self {
        ExperimentConfig {
            experiment,
            ..Default::default()
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let table: toml::Table = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Self::from_table(table)
    }

    /// Reads `path` (if any), applies `key=value` overrides in order, and
    /// validates the result.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let mut table = match path {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.to_path_buf(),
                    source,
                })?;
                toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
            }
            None => toml::Table::new(),
        };
        for item in overrides {
            apply_override(&mut table, item)?;
        }
        let cfg = Self::from_table(table)?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn from_table(table: toml::Table) -> Result<Self> {
        toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(e.to_string()))
    }

    pub fn emit(&self) -> String {
        toml::to_string(self).expect("experiment config always serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.params.to_pair()?;
        self.integrator.validate()?;
        match self.experiment {
            Experiment::SweepMu if self.sweep.mu.is_empty() => {
                return Err(Error::Config("sweep.mu is empty".into()))
            }
            Experiment::SweepNb if self.sweep.n_b.is_empty() => {
                return Err(Error::Config("sweep.n_b is empty".into()))
            }
            _ => {}
        }
        if self.sweep.n_b.iter().any(|&n| !(n >= 0.0)) {
            return Err(Error::Config("sweep.n_b entries must be non-negative".into()));
        }
        if self.chain.sites < 3 {
            return Err(Error::Config(format!("chain.sites must be at least 3, got {}", self.chain.sites)));
        }
        if self.experiment == Experiment::Chain {
            self.chain.params(&self.params)?;
            self.chain.integrator(&self.integrator).validate()?;
        }
        if self.experiment == Experiment::OuCheck && !(self.ou.dt > 0.0 && self.ou.t_end > 0.0) {
            return Err(Error::Config("ou.dt and ou.t_end must be positive".into()));
        }
        Ok(())
    }
}

/// Applies `section.key=value`; the value is read as a TOML literal and
/// falls back to a bare string.
pub fn apply_override(table: &mut toml::Table, item: &str) -> Result<()> {
    let (key, raw) = item
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override `{item}` is not key=value")))?;
    let path: Vec<&str> = key.trim().split('.').collect();
    if path.iter().any(|p| p.is_empty()) {
        return Err(Error::Config(format!("bad override key `{key}`")));
    }
    let raw = raw.trim();
    let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));

    let (last, parents) = path.split_last().expect("non-empty key");
    let mut node = table;
    for part in parents {
        let entry = node
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        node = entry
            .as_table_mut()
            .ok_or_else(|| Error::Config(format!("`{part}` in `{key}` is not a section")))?;
    }
    node.insert(last.to_string(), value);
    Ok(())
}

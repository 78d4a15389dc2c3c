//! Sweep configuration and its TOML form.
//!
//! ```toml
//! gates = ["H", "T"]            # or: gate = "CNOT"
//! preset = "single-gate-chain-5"
//! distance_mode = "euclidean"   # CNOT layout only
//! t = 3.141592653589793
//! alpha = { start = 0.0, stop = 12.0, step = 0.02 }   # or a number / list
//! lambda = [1.0, 0.85]
//! n = [1, 2]
//! sigma = [0.0, 0.05]
//! realizations = 1000
//! seed = 24301
//! sampling = "per-bond"
//! format = "csv"
//! output = "sweep.csv"
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::robustness::SamplingMode;
use crate::wgs::{DistanceMode, Preset, DEFAULT_TIME};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaGrid {
    Range { start: f64, stop: f64, step: f64 },
    Points(Vec<f64>),
}

impl Default for AlphaGrid {
    fn default() -> Self {
        AlphaGrid::Range { start: 0.0, stop: 12.0, step: 0.02 }
    }
}

impl AlphaGrid {
    pub fn validate(&self) -> Result<()> {
        match *self {
            AlphaGrid::Range { start, stop, step } => {
                if !(step > 0.0) || !step.is_finite() {
                    return Err(Error::InvalidConfig(format!("α step must be positive, got {step}")));
                }
                if !(start >= 0.0) || !(stop >= start) || !stop.is_finite() {
                    return Err(Error::InvalidConfig(format!(
                        "α range [{start}, {stop}] must satisfy 0 ≤ start ≤ stop"
                    )));
                }
            }
            AlphaGrid::Points(ref p) => {
                if p.is_empty() {
                    return Err(Error::InvalidConfig("empty α list".into()));
                }
                if let Some(a) = p.iter().find(|a| !(**a >= 0.0) || !a.is_finite()) {
                    return Err(Error::InvalidConfig(format!("α = {a} must be finite and ≥ 0")));
                }
            }
        }
        Ok(())
    }

    /// Grid points, computed as `start + i·step` to avoid accumulating error.
    pub fn points(&self) -> Vec<f64> {
        match *self {
            AlphaGrid::Range { start, stop, step } => {
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                (0..=n).map(|i| start + i as f64 * step).collect()
            }
            AlphaGrid::Points(ref p) => p.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidConfig(format!("unknown output format `{other}`"))),
        }
    }
}

pub fn parse_preset(s: &str) -> Result<Preset> {
    match s.to_ascii_lowercase().as_str() {
        "single-gate-chain-5" | "single-gate-chain5" | "chain5" => Ok(Preset::SingleGateChain5),
        "cnot-t-4" | "cnot-t4" => Ok(Preset::CnotT4),
        _ => Err(Error::InvalidConfig(format!("unknown preset `{s}`"))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub gates: Vec<Gate>,
    pub alpha: AlphaGrid,
    pub lambdas: Vec<f64>,
    /// Unsharp counts; `None` means every admissible `n` for each gate.
    pub ns: Option<Vec<usize>>,
    pub sigmas: Vec<f64>,
    pub realizations: usize,
    pub seed: u64,
    pub sampling: SamplingMode,
    pub distance_mode: DistanceMode,
    pub time: f64,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            gates: Gate::ALL.to_vec(),
            alpha: AlphaGrid::default(),
            lambdas: vec![1.0],
            ns: None,
            sigmas: vec![0.0],
            realizations: 1000,
            seed: 24301,
            sampling: SamplingMode::PerBond,
            distance_mode: DistanceMode::Euclidean,
            time: DEFAULT_TIME,
            format: OutputFormat::Csv,
            output: None,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.gates.is_empty() {
            return Err(Error::InvalidConfig("no gates selected".into()));
        }
        self.alpha.validate()?;
        if self.lambdas.is_empty() {
            return Err(Error::InvalidConfig("empty λ list".into()));
        }
        if let Some(&l) = self.lambdas.iter().find(|l| !(0.0..=1.0).contains(*l)) {
            return Err(Error::InvalidLambda(l));
        }
        if matches!(&self.ns, Some(ns) if ns.is_empty()) {
            return Err(Error::InvalidConfig("empty n list".into()));
        }
        if self.sigmas.is_empty() {
            return Err(Error::InvalidConfig("empty σ list".into()));
        }
        if let Some(s) = self.sigmas.iter().find(|s| !(**s >= 0.0) || !s.is_finite()) {
            return Err(Error::InvalidConfig(format!("σ = {s} must be ≥ 0")));
        }
        if self.realizations == 0 {
            return Err(Error::InvalidConfig("need at least one realization".into()));
        }
        if !self.time.is_finite() {
            return Err(Error::InvalidConfig(format!("evolution time {} is not finite", self.time)));
        }
        Ok(())
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(s)?;
        file.into_config()
    }

    pub fn from_toml_file(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AlphaEntry {
    Grid(AlphaGrid),
    One(f64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    preset: Option<String>,
    gate: Option<String>,
    gates: Option<Vec<String>>,
    distance_mode: Option<String>,
    t: Option<f64>,
    alpha: Option<AlphaEntry>,
    lambda: Option<OneOrMany<f64>>,
    n: Option<OneOrMany<usize>>,
    sigma: Option<OneOrMany<f64>>,
    realizations: Option<usize>,
    seed: Option<u64>,
    sampling: Option<SamplingMode>,
    format: Option<String>,
    output: Option<PathBuf>,
}

impl ConfigFile {
    fn into_config(self) -> Result<SweepConfig> {
        let mut cfg = SweepConfig::default();
        let names: Option<Vec<String>> = match (self.gate, self.gates) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidConfig("give either `gate` or `gates`, not both".into()))
            }
            (Some(g), None) => Some(vec![g]),
            (None, gs) => gs,
        };
        if let Some(names) = &names {
            cfg.gates = names.iter().map(|g| g.parse()).collect::<Result<_>>()?;
        }
        if let Some(p) = self.preset {
            let preset = parse_preset(&p)?;
            let wants_cnot = preset == Preset::CnotT4;
            if names.is_none() {
                cfg.gates =
                    if wants_cnot { vec![Gate::Cnot] } else { Gate::SINGLE_QUBIT.to_vec() };
            } else if cfg.gates.iter().any(|g| (*g == Gate::Cnot) != wants_cnot) {
                return Err(Error::InvalidConfig(format!(
                    "preset `{p}` does not host all of the selected gates"
                )));
            }
        }
        if let Some(m) = self.distance_mode {
            cfg.distance_mode = m.parse()?;
        }
        if let Some(t) = self.t {
            cfg.time = t;
        }
        match self.alpha {
            Some(AlphaEntry::Grid(g)) => cfg.alpha = g,
            Some(AlphaEntry::One(a)) => cfg.alpha = AlphaGrid::Points(vec![a]),
            None => {}
        }
        if let Some(l) = self.lambda {
            cfg.lambdas = l.into_vec();
        }
        if let Some(n) = self.n {
            cfg.ns = Some(n.into_vec());
        }
        if let Some(s) = self.sigma {
            cfg.sigmas = s.into_vec();
        }
        if let Some(r) = self.realizations {
            cfg.realizations = r;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(s) = self.sampling {
            cfg.sampling = s;
        }
        if let Some(f) = self.format {
            cfg.format = f.parse()?;
        }
        cfg.output = self.output;
        cfg.validate()?;
        Ok(cfg)
    }
}

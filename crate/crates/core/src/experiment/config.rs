//! Experiment configuration: defaults, an optional JSON file, then flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfmps::ladder::Strategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::validation(format!("unknown format `{s}`"))),
        }
    }
}

/// Rényi indices accept `"inf"` in JSON, since JSON has no infinity.
mod alpha_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Alpha {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<Alpha> = v
            .iter()
            .map(|&a| if a.is_finite() { Alpha::Num(a) } else { Alpha::Text("inf".into()) })
            .collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Vec::<Alpha>::deserialize(d)?
            .into_iter()
            .map(|a| match a {
                Alpha::Num(x) => Ok(x),
                Alpha::Text(t) => t
                    .parse::<f64>()
                    .map_err(|_| serde::de::Error::custom(format!("`{t}` is not a Rényi index"))),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Ring sizes, or interval lengths on the infinite chain when `ratio` is unset.
    pub n_list: Vec<usize>,
    /// `L/N` for finite rings; unset means the infinite chain with `L = N`.
    pub ratio: Option<f64>,
    #[serde(with = "alpha_list")]
    pub alpha: Vec<f64>,
    pub mu: Vec<f64>,
    pub delta_target: Vec<f64>,
    pub strategy: Strategy,
    pub eta: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    /// Worker threads; `0` uses all logical cores.
    pub workers: usize,
    pub no_timestamp: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_list: vec![34, 66, 130, 258, 514, 1026],
            ratio: None,
            alpha: vec![0.5, 1.0, 2.0, f64::INFINITY],
            mu: vec![0.9, 0.99, 0.999, 0.9999],
            delta_target: vec![1e-2, 1e-4, 1e-6],
            strategy: Strategy::LogSpread,
            eta: 1.3,
            beta: 1.0,
            epsilon: 1e-2,
            seed: None,
            out: None,
            format: OutputFormat::Csv,
            workers: 0,
            no_timestamp: false,
        }
    }
}

/// Values given on the command line; `None` leaves the lower layer in place.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub n_list: Option<Vec<usize>>,
    pub ratio: Option<f64>,
    pub alpha: Option<Vec<f64>>,
    pub mu: Option<Vec<f64>>,
    pub delta_target: Option<Vec<f64>>,
    pub strategy: Option<Strategy>,
    pub eta: Option<f64>,
    pub beta: Option<f64>,
    pub epsilon: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub workers: Option<usize>,
    pub no_timestamp: bool,
}

impl ConfigOverrides {
    /// Names of the fields set on the command line.
    pub fn set_fields(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        macro_rules! note {
            ($($f:ident),*) => {$(if self.$f.is_some() { v.push(stringify!($f)); })*};
        }
        note!(n_list, ratio, alpha, mu, delta_target, strategy, eta, beta, epsilon, seed, out, format, workers);
        if self.no_timestamp {
            v.push("no_timestamp");
        }
        v
    }
}

/// Where each layer of a resolved configuration came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigSources {
    pub defaults: ExperimentConfig,
    pub file: Option<PathBuf>,
    pub flags: Vec<&'static str>,
}

fn field_error(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::validation(format!("field `{field}`: {msg}"))
}

impl ExperimentConfig {
    /// Parses a JSON config, naming the offending field on failure.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if path == "." {
                Error::validation(format!("config: {inner}"))
            } else {
                field_error(&path, inner)
            }
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Flags over file over defaults, then validation.
    pub fn resolve(file: Option<&Path>, flags: ConfigOverrides) -> Result<(Self, ConfigSources)> {
        let mut cfg = match file {
            Some(p) => Self::from_file(p)?,
            None => Self::default(),
        };
        let sources = ConfigSources {
            defaults: Self::default(),
            file: file.map(Path::to_path_buf),
            flags: flags.set_fields(),
        };
        macro_rules! apply {
            ($($f:ident),*) => {$(if let Some(v) = flags.$f { cfg.$f = v; })*};
        }
        apply!(n_list, alpha, mu, delta_target, strategy, eta, beta, epsilon, workers, format);
        if flags.ratio.is_some() {
            cfg.ratio = flags.ratio;
        }
        if flags.seed.is_some() {
            cfg.seed = flags.seed;
        }
        if flags.out.is_some() {
            cfg.out = flags.out;
        }
        cfg.no_timestamp |= flags.no_timestamp;
        cfg.validate()?;
        Ok((cfg, sources))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() {
            return Err(field_error("n_list", "must not be empty"));
        }
        if let Some(n) = self.n_list.iter().find(|&&n| n < 2) {
            return Err(field_error("n_list", format!("sizes must be at least 2, got {n}")));
        }
        if let Some(r) = self.ratio {
            if !(r > 0.0 && r <= 1.0) {
                return Err(field_error("ratio", format!("must lie in (0, 1], got {r}")));
            }
        }
        if self.alpha.is_empty() || self.alpha.iter().any(|a| !(*a > 0.0)) {
            return Err(field_error("alpha", "Rényi indices must be positive"));
        }
        if self.mu.is_empty() || self.mu.iter().any(|m| !(*m > 0.0 && *m < 1.0)) {
            return Err(field_error("mu", "thresholds must lie in (0, 1)"));
        }
        if self.delta_target.is_empty() || self.delta_target.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
            return Err(field_error("delta_target", "targets must be positive"));
        }
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return Err(field_error("eta", format!("must be positive, got {}", self.eta)));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(field_error("beta", format!("must be positive, got {}", self.beta)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(field_error("epsilon", format!("must lie in (0, 1), got {}", self.epsilon)));
        }
        Ok(())
    }

    /// Interval length for ring size `n`, `None` on the infinite chain.
    pub fn interval(&self, n: usize) -> Option<usize> {
        self.ratio.map(|r| ((r * n as f64).round() as usize).clamp(1, n))
    }

    pub fn require_seed(&self, command: &str) -> Result<u64> {
        self.seed
            .ok_or_else(|| field_error("seed", format!("required by `{command}`")))
    }

    /// SHA-256 of the canonical JSON of the resolved configuration.
    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let json = serde_json::to_vec(self).expect("config serialises");
        hex::encode(Sha256::digest(&json))
    }
}

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::estimators::EstimatorParams;
use crate::graph::DEFAULT_N_EXACT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Alg1,
    Alg2,
    Alg3,
    Alg4,
    Offline,
    Alg2Cq,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Alg1,
        Algorithm::Alg2,
        Algorithm::Alg3,
        Algorithm::Alg4,
        Algorithm::Offline,
        Algorithm::Alg2Cq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Alg1 => "alg1",
            Algorithm::Alg2 => "alg2",
            Algorithm::Alg3 => "alg3",
            Algorithm::Alg4 => "alg4",
            Algorithm::Offline => "offline",
            Algorithm::Alg2Cq => "alg2_cq",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::config("algorithm", format!("unknown algorithm `{s}`")))
    }
}

/// Instance generator, written `bipartite:nl=..,nr=..,m=..`, `hub:n=..,mlow=..,hubs=..,hubdeg=..`
/// or `file:<path>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSpec {
    Bipartite {
        nl: u32,
        nr: u32,
        m: usize,
    },
    Hub {
        n: u32,
        m_low: usize,
        hubs: u32,
        hub_degree: u32,
    },
    File(PathBuf),
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSpec::Bipartite { nl, nr, m } => write!(f, "bipartite:nl={nl},nr={nr},m={m}"),
            InstanceSpec::Hub {
                n,
                m_low,
                hubs,
                hub_degree,
            } => write!(f, "hub:n={n},mlow={m_low},hubs={hubs},hubdeg={hub_degree}"),
            InstanceSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn spec_error(msg: impl Into<String>) -> Error {
    Error::config("instance.spec", msg)
}

impl FromStr for InstanceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| spec_error(format!("`{s}` is missing a `kind:` prefix")))?;
        if kind == "file" {
            if rest.is_empty() {
                return Err(spec_error("file instance needs a path"));
            }
            return Ok(InstanceSpec::File(PathBuf::from(rest)));
        }
        let mut fields = std::collections::BTreeMap::new();
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| spec_error(format!("`{part}` is not key=value")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| spec_error(format!("`{k}` must be a nonnegative integer, got `{v}`")))?;
            fields.insert(k.trim().to_string(), v);
        }
        let mut take = |k: &str| {
            fields
                .remove(k)
                .ok_or_else(|| spec_error(format!("{kind} instance is missing `{k}`")))
        };
        let spec = match kind {
            "bipartite" => InstanceSpec::Bipartite {
                nl: take("nl")? as u32,
                nr: take("nr")? as u32,
                m: take("m")? as usize,
            },
            "hub" => InstanceSpec::Hub {
                n: take("n")? as u32,
                m_low: take("mlow")? as usize,
                hubs: take("hubs")? as u32,
                hub_degree: take("hubdeg")? as u32,
            },
            other => return Err(spec_error(format!("unknown instance kind `{other}`"))),
        };
        if let Some(k) = fields.keys().next() {
            return Err(spec_error(format!("unknown field `{k}` for {kind} instance")));
        }
        Ok(spec)
    }
}

impl Serialize for InstanceSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for InstanceSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceConfig {
    pub spec: InstanceSpec,
    /// Generator seed; derived from the master seed when absent.
    #[serde(default)]
    pub seed: Option<u64>,
    /// Insert-then-delete pairs added when the algorithm needs a dynamic stream.
    #[serde(default)]
    pub churn: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputConfig {
    pub path: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
}

fn one() -> usize {
    1
}

fn default_n_exact() -> u32 {
    DEFAULT_N_EXACT
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub instance: InstanceConfig,
    pub algorithm: Algorithm,
    #[serde(default)]
    pub params: EstimatorParams,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default = "one")]
    pub median_k: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub output: Option<OutputConfig>,
    /// Only let estimators read predictions of endpoints of arrived edges.
    #[serde(default)]
    pub edge_annotated: bool,
    /// Report `min(estimate, m)`.
    #[serde(default)]
    pub cap_at_m: bool,
    /// Success ratio; defaults to the algorithm's guarantee.
    #[serde(default)]
    pub target: Option<f64>,
    #[serde(default)]
    pub record_timing: bool,
    /// Sampling accuracy of `alg2_cq`.
    #[serde(default)]
    pub eta: Option<f64>,
    /// Largest graph solved by brute force when no reference assignment is available.
    #[serde(default = "default_n_exact")]
    pub n_exact: u32,
}

impl ExperimentConfig {
    pub fn new(spec: InstanceSpec, algorithm: Algorithm, params: EstimatorParams) -> Self {
        ExperimentConfig {
            instance: InstanceConfig {
                spec,
                seed: None,
                churn: 0,
            },
            algorithm,
            params,
            trials: 1,
            median_k: 1,
            master_seed: 0,
            output: None,
            edge_annotated: false,
            cap_at_m: false,
            target: None,
            record_timing: false,
            eta: None,
            n_exact: DEFAULT_N_EXACT,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::config("<root>", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::config("trials", "must be at least 1"));
        }
        if self.median_k == 0 || self.median_k.is_multiple_of(2) {
            return Err(Error::config("median_k", format!("must be odd, got {}", self.median_k)));
        }
        let p = &self.params;
        if !(p.eps > 0.0 && p.eps <= 0.5) {
            return Err(Error::config(
                "params.eps",
                format!("must be in (0, 1/2], got {}", p.eps),
            ));
        }
        if !(p.delta > 0.0 && p.delta < 1.0) {
            return Err(Error::config(
                "params.delta",
                format!("must be in (0, 1), got {}", p.delta),
            ));
        }
        if !(p.beta > 0.0 && p.beta.is_finite()) {
            return Err(Error::config(
                "params.beta",
                format!("must be positive, got {}", p.beta),
            ));
        }
        for (field, v) in [
            ("params.sample_size", p.sample_size),
            ("params.cm_width", p.cm_width),
            ("params.cm_depth", p.cm_depth),
        ] {
            if v == Some(0) {
                return Err(Error::config(field, "must be at least 1"));
            }
        }
        if let Some(t) = self.target {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::config("target", format!("must be positive, got {t}")));
            }
        }
        if let Some(eta) = self.eta {
            if !(eta > 0.0 && eta < 1.0) {
                return Err(Error::config("eta", format!("must be in (0, 1), got {eta}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_specs_round_trip() {
        for s in [
            "bipartite:nl=500,nr=500,m=100000",
            "hub:n=1000,mlow=50000,hubs=3,hubdeg=2000",
            "file:data/x.stream",
        ] {
            let spec: InstanceSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("bipartite:nl=5,nr=5".parse::<InstanceSpec>().is_err());
        assert!("bipartite:nl=5,nr=5,m=3,x=1".parse::<InstanceSpec>().is_err());
        assert!("ring:n=5".parse::<InstanceSpec>().is_err());
    }

    #[test]
    fn minimal_json_uses_defaults() {
        let cfg =
            ExperimentConfig::from_json(r#"{"instance": {"spec": "bipartite:nl=3,nr=3,m=5"}, "algorithm": "alg2_cq"}"#)
                .unwrap();
        assert_eq!(cfg.algorithm, Algorithm::Alg2Cq);
        assert_eq!((cfg.trials, cfg.median_k), (1, 1));
        assert_eq!(cfg.params, EstimatorParams::default());
    }

    #[test]
    fn errors_name_the_field() {
        let mut cfg = ExperimentConfig::new(
            "bipartite:nl=3,nr=3,m=5".parse().unwrap(),
            Algorithm::Alg1,
            EstimatorParams::default(),
        );
        cfg.median_k = 4;
        match cfg.validate() {
            Err(Error::Config { path, .. }) => assert_eq!(path, "median_k"),
            other => panic!("{other:?}"),
        }
        cfg.median_k = 3;
        cfg.params.delta = 1.5;
        match cfg.validate() {
            Err(Error::Config { path, .. }) => assert_eq!(path, "params.delta"),
            other => panic!("{other:?}"),
        }
        let bad = ExperimentConfig::from_json(r#"{"instance": {"spec": "ring:n=4"}, "algorithm": "alg1"}"#);
        assert_eq!(bad.unwrap_err().exit_code(), 2);
    }
}

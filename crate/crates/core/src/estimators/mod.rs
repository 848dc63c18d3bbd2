//! MAX-CUT value estimators driven by eps-accurate predictions.
//!
//! | function | stream model | edge sample | incidence counts |
//! |---|---|---|---|
//! | [`alg1_run`] | insertion-only, low degree | none | none |
//! | [`alg2_run`] | random order | stream prefix | exact counters |
//! | [`alg3_run`] | arbitrary order | reservoir | CountMin |
//! | [`alg4_run`] | dynamic | l0-samplers | CountMin |
//! | [`alg2_constant_query_run`] | random order | stream prefix | sampled, O(1) oracle queries |
//!
//! All of them report `max(ALG1, ALG2)`: the oracle cut extended greedily with
//! the candidate hubs, and the cut separating the hubs from everything else.

mod arbitrary_order;
mod constant_query;
mod dynamic;
mod fallback;
mod low_degree;
mod offline;
mod random_order;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Label;

pub use arbitrary_order::{alg3_run, alg3_run_with, ArbitraryOrderEstimator, SketchOutcome};
pub use constant_query::{
    alg2_constant_query_run, constant_query_budget, estimate_sum_by_sampling, SumEstimatorConfig,
};
pub use dynamic::{alg4_run, alg4_run_with, DynamicEstimator};
pub use fallback::{small_m_fallback, FallbackOutcome};
pub use low_degree::{alg1_report, alg1_run};
pub use offline::{offline_best_of_two, CutChoice, OfflineBestOfTwo};
pub use random_order::alg2_run;

/// How the dynamic estimator updates the cross-prediction counter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossCounterMode {
    /// Add the event's delta, so deletions cancel insertions.
    #[default]
    Net,
    /// Add 1 for every event whose endpoint predictions differ, deletions included.
    /// Only useful to demonstrate why the net update is required.
    LiteralIncrement,
}

/// Upper bound on counters in one auto-sized CountMin table.
const MAX_AUTO_CM_CELLS: f64 = (1u64 << 27) as f64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EstimatorParams {
    pub eps: f64,
    pub delta: f64,
    /// Universal constant scaling the edge-sample size.
    pub beta: f64,
    pub sample_size: Option<usize>,
    pub cm_width: Option<usize>,
    pub cm_depth: Option<usize>,
    pub cross_counter: CrossCounterMode,
    pub small_m_threshold: Option<u64>,
}

impl Default for EstimatorParams {
    fn default() -> Self {
        EstimatorParams {
            eps: 0.25,
            delta: 1.0 / 3.0,
            beta: 1.0,
            sample_size: None,
            cm_width: None,
            cm_depth: None,
            cross_counter: CrossCounterMode::Net,
            small_m_threshold: None,
        }
    }
}

/// Parameters as actually used by a run, after defaults and overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedParams {
    pub eps: f64,
    pub delta: f64,
    pub beta: f64,
    pub sample_size: usize,
    pub cm_width: usize,
    pub cm_depth: usize,
    pub l0_fail_prob: f64,
    pub overrides: Vec<String>,
}

impl EstimatorParams {
    pub fn new(eps: f64, delta: f64) -> Self {
        EstimatorParams {
            eps,
            delta,
            ..Default::default()
        }
    }

    pub fn with_sample_size(mut self, t: usize) -> Self {
        self.sample_size = Some(t);
        self
    }

    pub fn with_cm(mut self, width: usize, depth: usize) -> Self {
        self.cm_width = Some(width);
        self.cm_depth = Some(depth);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps <= 0.5) {
            return Err(Error::Domain(format!("eps must be in (0, 1/2], got {}", self.eps)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Domain(format!("delta must be in (0, 1), got {}", self.delta)));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::Domain(format!("beta must be positive, got {}", self.beta)));
        }
        for (name, v) in [
            ("sample_size", self.sample_size),
            ("cm_width", self.cm_width),
            ("cm_depth", self.cm_depth),
        ] {
            if v == Some(0) {
                return Err(Error::Domain(format!("{name} override must be at least 1")));
            }
        }
        Ok(())
    }

    /// `c = 80 / delta`.
    pub fn c(&self) -> f64 {
        80.0 / self.delta
    }

    /// High-degree threshold `eps^2 m / c`.
    pub fn theta(&self, m: u64) -> f64 {
        self.eps * self.eps * m as f64 / self.c()
    }

    /// Edge-sample size `ceil(beta / (delta^3 eps^4))`.
    pub fn sample_size(&self) -> usize {
        self.sample_size
            .unwrap_or_else(|| (self.beta / (self.delta.powi(3) * self.eps.powi(4))).ceil() as usize)
    }

    /// CountMin width `ceil(e / (eps^7 delta^3))`.
    pub fn cm_width(&self) -> usize {
        self.cm_width
            .unwrap_or_else(|| (std::f64::consts::E / (self.eps.powi(7) * self.delta.powi(3))).ceil() as usize)
    }

    /// CountMin depth `ceil(ln(8 beta / (eps^4 delta^4)))`.
    pub fn cm_depth(&self) -> usize {
        self.cm_depth.unwrap_or_else(|| {
            ((8.0 * self.beta / (self.eps.powi(4) * self.delta.powi(4))).ln().ceil() as usize).max(1)
        })
    }

    /// Per-sampler failure probability `delta^4 eps^4 / (8 beta)`.
    pub fn l0_fail_prob(&self) -> f64 {
        (self.delta.powi(4) * self.eps.powi(4) / (8.0 * self.beta)).min(0.5)
    }

    /// Edge count below which storing the whole graph is cheap: `eps^-11 delta^-7`.
    pub fn small_m_threshold(&self) -> u64 {
        self.small_m_threshold.unwrap_or_else(|| {
            let t = self.eps.powi(-11) * self.delta.powi(-7);
            if t >= u64::MAX as f64 {
                u64::MAX
            } else {
                t.ceil() as u64
            }
        })
    }

    pub(crate) fn check_cm_size(&self) -> Result<()> {
        let cells = self.cm_width() as f64 * self.cm_depth() as f64;
        if cells > MAX_AUTO_CM_CELLS {
            return Err(Error::Capacity(format!(
                "CountMin of {} x {} counters is too large; set cm_width / cm_depth",
                self.cm_depth(),
                self.cm_width()
            )));
        }
        Ok(())
    }

    pub fn resolved(&self) -> ResolvedParams {
        let mut overrides = Vec::new();
        if let Some(t) = self.sample_size {
            overrides.push(format!("sample_size={t}"));
        }
        if let Some(w) = self.cm_width {
            overrides.push(format!("cm_width={w}"));
        }
        if let Some(d) = self.cm_depth {
            overrides.push(format!("cm_depth={d}"));
        }
        if self.beta != 1.0 {
            overrides.push(format!("beta={}", self.beta));
        }
        if self.cross_counter != CrossCounterMode::Net {
            overrides.push("cross_counter=literal_increment".into());
        }
        ResolvedParams {
            eps: self.eps,
            delta: self.delta,
            beta: self.beta,
            sample_size: self.sample_size(),
            cm_width: self.cm_width(),
            cm_depth: self.cm_depth(),
            l0_fail_prob: self.l0_fail_prob(),
            overrides,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSeeds {
    pub oracle: Option<u64>,
    pub estimator: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    #[serde(rename = "alg1")]
    pub alg1_value: u64,
    #[serde(rename = "alg2")]
    pub alg2_value: u64,
    pub estimate: u64,
    #[serde(rename = "h_tilde")]
    pub h_tilde_size: usize,
    #[serde(rename = "words")]
    pub words_used: usize,
    #[serde(rename = "queries")]
    pub oracle_queries: usize,
    pub params: Option<ResolvedParams>,
    pub seeds: ReportSeeds,
}

impl EstimateReport {
    pub fn new(alg1_value: u64, alg2_value: u64) -> Self {
        EstimateReport {
            alg1_value,
            alg2_value,
            estimate: alg1_value.max(alg2_value),
            h_tilde_size: 0,
            words_used: 0,
            oracle_queries: 0,
            params: None,
            seeds: ReportSeeds::default(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyExtension {
    pub value: u64,
    /// Side chosen for each hub, in input order.
    pub sides: Vec<Label>,
}

/// Adds each hub to the side of a fixed cut that cuts more of its edges.
///
/// Hubs are `(edges to the - side, edges to the + side)`. A hub joins `+` when
/// that cuts at least as many edges as joining `-`.
pub fn greedy_extension(base_cut: u64, hubs: &[(u64, u64)]) -> GreedyExtension {
    let mut value = base_cut;
    let sides = hubs
        .iter()
        .map(|&(to_minus, to_plus)| {
            value += to_minus.max(to_plus);
            if to_minus >= to_plus {
                Label::Plus
            } else {
                Label::Minus
            }
        })
        .collect();
    GreedyExtension { value, sides }
}

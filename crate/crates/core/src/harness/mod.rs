//! Experiment runner: instance preparation, seeded trials, the median trick and
//! summary statistics.

mod config;
mod output;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use config::{Algorithm, ExperimentConfig, InstanceConfig, InstanceSpec, OutputConfig, OutputFormat};
pub use output::{write_output, write_records_csv, CSV_COLUMNS};

use crate::error::{Error, Result};
use crate::estimators::{
    alg1_report, alg2_constant_query_run, alg2_run, alg3_run, alg4_run, offline_best_of_two, EstimateReport,
    EstimatorParams, ReportSeeds,
};
use crate::graph::{
    brute_force_maxcut_capped, build_final_graph, gen_dynamic_stream, gen_hub_instance, gen_planted_bipartite, io,
    shuffle_to_random_order, Graph, GraphStream, PlantedInstance, StreamKind,
};
use crate::oracle::{EdgeAnnotatedOracle, NoisyOracle, PredictionOracle};
use crate::seed::{derive_seed, SeedRole};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetMode {
    Alg1,
    BestOfTwo,
}

/// `1/2 + eps^2` for the low-degree estimator, `1/2 + eps^2 / 16` for best-of-two.
pub fn compute_target_ratio(eps: f64, mode: TargetMode) -> Result<f64> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::Domain(format!("eps must be in (0, 1/2], got {eps}")));
    }
    Ok(match mode {
        TargetMode::Alg1 => 0.5 + eps * eps,
        TargetMode::BestOfTwo => 0.5 + eps * eps / 16.0,
    })
}

/// Seeds for one estimator run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSeeds {
    pub oracle: u64,
    pub estimator: u64,
    pub order: u64,
}

impl RunSeeds {
    pub fn derive(master: u64, index: u64) -> Self {
        RunSeeds {
            oracle: derive_seed(master, index, SeedRole::Oracle),
            estimator: derive_seed(master, index, SeedRole::Estimator),
            order: derive_seed(master, index, SeedRole::Order),
        }
    }
}

/// Median of `k` independent runs, each given its own seeds derived from `master_seed`.
pub fn median_of_runs<F>(k: usize, master_seed: u64, mut run: F) -> Result<u64>
where
    F: FnMut(RunSeeds) -> Result<u64>,
{
    median_of_reports(k, master_seed, |s| run(s).map(|x| EstimateReport::new(x, 0))).map(|r| r.estimate)
}

/// Like [`median_of_runs`] but keeps the whole report of the median run.
pub fn median_of_reports<F>(k: usize, master_seed: u64, mut run: F) -> Result<EstimateReport>
where
    F: FnMut(RunSeeds) -> Result<EstimateReport>,
{
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::Domain(format!("median needs an odd number of runs, got {k}")));
    }
    let mut reports = (0..k as u64)
        .map(|i| run(RunSeeds::derive(master_seed, i)))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by_key(|r| r.estimate);
    Ok(reports.swap_remove(k / 2))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: usize,
    pub oracle_seed: u64,
    pub estimator_seed: u64,
    pub estimate: u64,
    pub alg1: u64,
    pub alg2: u64,
    pub opt_value: Option<u64>,
    pub ratio: Option<f64>,
    pub success: Option<bool>,
    pub words_used: usize,
    pub oracle_queries: usize,
    pub h_tilde: usize,
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub n: u32,
    pub m: u64,
    pub opt_value: Option<u64>,
    pub target: f64,
    pub mean_ratio: Option<f64>,
    pub min_ratio: Option<f64>,
    pub success_frequency: Option<f64>,
    pub mean_words: f64,
    pub mean_queries: f64,
    /// Whether `m` reaches the small-m threshold the analysis assumes.
    pub small_m_bound_satisfied: bool,
    /// `e(H, L) / OPT` with `H` the vertices of degree at least the high-degree threshold.
    pub hub_share: Option<f64>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub summary: Summary,
    pub records: Vec<TrialRecord>,
}

/// Instance plus everything trials share read-only.
#[derive(Debug, Clone)]
pub struct PreparedInstance {
    pub instance: PlantedInstance,
    /// The stream each trial reads; dynamic when the algorithm needs it.
    pub stream: GraphStream,
    pub graph: Graph,
    pub x_star: Vec<crate::graph::Label>,
    pub opt_value: Option<u64>,
    pub diagnostics: Vec<String>,
}

fn generate(cfg: &ExperimentConfig) -> Result<PlantedInstance> {
    let seed = cfg
        .instance
        .seed
        .unwrap_or_else(|| derive_seed(cfg.master_seed, 0, SeedRole::Instance));
    match &cfg.instance.spec {
        InstanceSpec::Bipartite { nl, nr, m } => gen_planted_bipartite(*nl, *nr, *m, seed),
        InstanceSpec::Hub {
            n,
            m_low,
            hubs,
            hub_degree,
        } => gen_hub_instance(*n, *m_low, *hubs, *hub_degree, seed),
        InstanceSpec::File(path) => io::load_instance(path),
    }
}

pub fn prepare_instance(cfg: &ExperimentConfig) -> Result<PreparedInstance> {
    let mut instance = generate(cfg)?;
    let graph = build_final_graph(&instance.stream)?;
    let mut diagnostics = Vec::new();
    let (x_star, opt_value) = match instance.opt_assignment.clone() {
        Some(x) if instance.opt_is_exact => (x, Some(instance.opt_value)),
        Some(x) => {
            diagnostics.push("reference assignment is not certified optimal; ratios omitted".into());
            (x, None)
        }
        None if graph.n <= cfg.n_exact => {
            let cut = brute_force_maxcut_capped(&graph, cfg.n_exact)?;
            instance.opt_value = cut.value as u64;
            instance.opt_assignment = Some(cut.assignment.clone());
            instance.opt_is_exact = true;
            (cut.assignment, Some(cut.value as u64))
        }
        None => {
            return Err(Error::config(
                "instance.spec",
                format!(
                    "instance has no reference assignment and n = {} exceeds n_exact = {}",
                    graph.n, cfg.n_exact
                ),
            ))
        }
    };
    let stream = match cfg.algorithm {
        Algorithm::Alg4 if instance.stream.kind != StreamKind::Dynamic => {
            let churn_seed = derive_seed(cfg.master_seed, 0, SeedRole::Churn);
            gen_dynamic_stream(&instance, cfg.instance.churn, churn_seed)?.stream
        }
        Algorithm::Alg4 => instance.stream.clone(),
        _ if instance.stream.kind == StreamKind::Dynamic => graph.to_stream(),
        _ => instance.stream.clone(),
    };
    Ok(PreparedInstance {
        instance,
        stream,
        graph,
        x_star,
        opt_value,
        diagnostics,
    })
}

fn dispatch<O: PredictionOracle>(
    cfg: &ExperimentConfig,
    prep: &PreparedInstance,
    oracle: &mut O,
    seeds: RunSeeds,
) -> Result<EstimateReport> {
    let p = &cfg.params;
    let random_order = || -> Result<GraphStream> {
        let mut s = prep.stream.clone();
        s.kind = StreamKind::InsertionArbitrary;
        shuffle_to_random_order(&s, seeds.order)
    };
    match cfg.algorithm {
        Algorithm::Alg1 => alg1_report(&prep.stream, oracle),
        Algorithm::Alg2 => alg2_run(&random_order()?, oracle, p),
        Algorithm::Alg2Cq => alg2_constant_query_run(&random_order()?, oracle, p, cfg.eta, seeds.estimator),
        Algorithm::Alg3 => Ok(alg3_run(&prep.stream, oracle, p, seeds.estimator)?.report),
        Algorithm::Alg4 => Ok(alg4_run(&prep.stream, oracle, p, seeds.estimator)?.report),
        Algorithm::Offline => {
            for e in prep.graph.edges() {
                oracle.observe_edge(*e);
            }
            let r = offline_best_of_two(&prep.graph, oracle, p)?;
            let mut report = EstimateReport::new(r.greedy_value, r.hubs_vs_rest);
            report.h_tilde_size = r.high_degree.len();
            report.words_used = 2 * prep.graph.m();
            report.oracle_queries = oracle.distinct_queries();
            report.params = Some(p.resolved());
            Ok(report)
        }
    }
}

/// One estimator run with its own oracle.
pub fn run_once(cfg: &ExperimentConfig, prep: &PreparedInstance, seeds: RunSeeds) -> Result<EstimateReport> {
    let oracle = NoisyOracle::new(prep.x_star.clone(), cfg.params.eps, seeds.oracle)?;
    let mut report = if cfg.edge_annotated {
        dispatch(cfg, prep, &mut EdgeAnnotatedOracle::new(oracle), seeds)?
    } else {
        let mut oracle = oracle;
        dispatch(cfg, prep, &mut oracle, seeds)?
    };
    report.seeds = ReportSeeds {
        oracle: Some(seeds.oracle),
        estimator: Some(seeds.estimator),
    };
    if cfg.cap_at_m {
        report.estimate = report.estimate.min(prep.graph.m() as u64);
    }
    Ok(report)
}

fn target_for(cfg: &ExperimentConfig) -> Result<f64> {
    match cfg.target {
        Some(t) => Ok(t),
        None => {
            let mode = if cfg.algorithm == Algorithm::Alg1 {
                TargetMode::Alg1
            } else {
                TargetMode::BestOfTwo
            };
            compute_target_ratio(cfg.params.eps, mode)
        }
    }
}

pub fn run_trial(
    cfg: &ExperimentConfig,
    prep: &PreparedInstance,
    trial_index: usize,
    target: f64,
) -> Result<TrialRecord> {
    let start = Instant::now();
    let seeds = RunSeeds::derive(cfg.master_seed, trial_index as u64);
    let report = if cfg.median_k == 1 {
        run_once(cfg, prep, seeds)?
    } else {
        let sub_master = derive_seed(cfg.master_seed, trial_index as u64, SeedRole::Median);
        median_of_reports(cfg.median_k, sub_master, |s| run_once(cfg, prep, s))?
    };
    let ratio = prep
        .opt_value
        .filter(|&o| o > 0)
        .map(|o| report.estimate as f64 / o as f64);
    Ok(TrialRecord {
        trial_index,
        oracle_seed: report.seeds.oracle.unwrap_or(seeds.oracle),
        estimator_seed: report.seeds.estimator.unwrap_or(seeds.estimator),
        estimate: report.estimate,
        alg1: report.alg1_value,
        alg2: report.alg2_value,
        opt_value: prep.opt_value,
        ratio,
        success: ratio.map(|r| r >= target),
        words_used: report.words_used,
        oracle_queries: report.oracle_queries,
        h_tilde: report.h_tilde_size,
        wall_time_ms: cfg.record_timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

/// Edges between high-degree and low-degree vertices, by true degree.
fn hubs_vs_rest(g: &Graph, params: &EstimatorParams) -> u64 {
    let theta = params.theta(g.m() as u64);
    let high: Vec<bool> = g.degrees().iter().map(|&d| d as f64 >= theta).collect();
    g.edges()
        .iter()
        .filter(|e| high[e.u as usize] != high[e.v as usize])
        .count() as u64
}

pub fn summarize(cfg: &ExperimentConfig, prep: &PreparedInstance, records: &[TrialRecord], target: f64) -> Summary {
    let k = records.len().max(1) as f64;
    let ratios: Vec<f64> = records.iter().filter_map(|r| r.ratio).collect();
    let have_ratios = !ratios.is_empty() && ratios.len() == records.len();
    let mut diagnostics = prep.diagnostics.clone();
    if prep.opt_value.is_some() && !have_ratios {
        diagnostics.push("OPT is zero; ratios omitted".into());
    }
    let m = prep.graph.m() as u64;
    Summary {
        trials: records.len(),
        n: prep.graph.n,
        m,
        opt_value: prep.opt_value,
        target,
        mean_ratio: have_ratios.then(|| ratios.iter().sum::<f64>() / k),
        min_ratio: have_ratios.then(|| ratios.iter().copied().fold(f64::INFINITY, f64::min)),
        success_frequency: have_ratios.then(|| records.iter().filter(|r| r.success == Some(true)).count() as f64 / k),
        mean_words: records.iter().map(|r| r.words_used as f64).sum::<f64>() / k,
        mean_queries: records.iter().map(|r| r.oracle_queries as f64).sum::<f64>() / k,
        small_m_bound_satisfied: m >= cfg.params.small_m_threshold(),
        hub_share: prep
            .opt_value
            .filter(|&o| o > 0)
            .map(|o| hubs_vs_rest(&prep.graph, &cfg.params) as f64 / o as f64),
        diagnostics,
    }
}

/// Runs every trial (in parallel, output ordered by trial index) and writes the
/// configured output file.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let prep = prepare_instance(cfg)?;
    run_prepared(cfg, &prep)
}

/// [`run_experiment`] on an already prepared instance.
pub fn run_prepared(cfg: &ExperimentConfig, prep: &PreparedInstance) -> Result<ExperimentReport> {
    cfg.validate()?;
    let target = target_for(cfg)?;
    let records = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(cfg, prep, i, target))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(cfg, prep, &records, target);
    let report = ExperimentReport {
        config: cfg.clone(),
        summary,
        records,
    };
    if let Some(out) = &cfg.output {
        write_output(&report, out)?;
    }
    Ok(report)
}

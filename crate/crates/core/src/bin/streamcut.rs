use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use streamcut::estimators::{CrossCounterMode, EstimatorParams};
use streamcut::graph::{brute_force_maxcut_capped, build_final_graph, gen_dynamic_stream, io, DEFAULT_N_EXACT};
use streamcut::harness::{
    prepare_instance, run_experiment, Algorithm, ExperimentConfig, InstanceSpec, OutputConfig, OutputFormat,
};
use streamcut::seed::{derive_seed, SeedRole};
use streamcut::{Error, Result};

#[derive(Parser)]
#[command(name = "streamcut", version, about = "MAX-CUT value estimation over graph streams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a config file or flags.
    Run(RunArgs),
    /// Generate a planted instance and write it with its metadata sidecar.
    Gen(GenArgs),
    /// Solve a small stream exactly by enumeration.
    Exact(ExactArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, conflicts_with_all = ["alg", "instance"])]
    config: Option<PathBuf>,
    #[arg(long, required_unless_present = "config")]
    alg: Option<String>,
    #[arg(long, required_unless_present = "config")]
    instance: Option<String>,
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    #[arg(long, default_value_t = 1.0 / 3.0)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    instance_seed: Option<u64>,
    #[arg(long)]
    cm_width: Option<usize>,
    #[arg(long)]
    cm_depth: Option<usize>,
    #[arg(long)]
    sample_size: Option<usize>,
    #[arg(long, default_value_t = 1)]
    median_k: usize,
    #[arg(long, default_value_t = 0)]
    churn: usize,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    target: Option<f64>,
    #[arg(long)]
    edge_annotated: bool,
    #[arg(long)]
    cap_at_m: bool,
    #[arg(long)]
    literal_cross_counter: bool,
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; inferred from the `--out` extension when omitted.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    instance: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stream kind to write: ins, rand or dyn.
    #[arg(long, default_value = "ins")]
    kind: String,
    #[arg(long, default_value_t = 0)]
    churn: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_N_EXACT)]
    n_exact: u32,
}

/// `STREAMCUT_SEED` takes precedence over `--seed`.
fn seed_override(flag: Option<u64>) -> Result<Option<u64>> {
    match std::env::var("STREAMCUT_SEED") {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| Error::Config {
            path: "STREAMCUT_SEED".into(),
            message: format!("not an unsigned integer: `{s}`"),
        }),
        Err(_) => Ok(flag),
    }
}

fn parse_format(s: &str) -> Result<OutputFormat> {
    match s {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        other => Err(Error::Config {
            path: "output.format".into(),
            message: format!("unknown format `{other}`"),
        }),
    }
}

fn config_from_flags(a: &RunArgs) -> Result<ExperimentConfig> {
    let spec: InstanceSpec = a.instance.as_deref().unwrap_or_default().parse()?;
    let alg: Algorithm = a.alg.as_deref().unwrap_or_default().parse()?;
    let mut params = EstimatorParams::new(a.eps, a.delta);
    params.beta = a.beta;
    params.sample_size = a.sample_size;
    params.cm_width = a.cm_width;
    params.cm_depth = a.cm_depth;
    if a.literal_cross_counter {
        params.cross_counter = CrossCounterMode::LiteralIncrement;
    }
    let mut cfg = ExperimentConfig::new(spec, alg, params);
    cfg.instance.seed = a.instance_seed;
    cfg.instance.churn = a.churn;
    cfg.trials = a.trials;
    cfg.median_k = a.median_k;
    cfg.eta = a.eta;
    cfg.target = a.target;
    cfg.edge_annotated = a.edge_annotated;
    cfg.cap_at_m = a.cap_at_m;
    cfg.record_timing = a.timing;
    Ok(cfg)
}

fn run(a: RunArgs) -> Result<()> {
    let mut cfg = match &a.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => config_from_flags(&a)?,
    };
    if let Some(seed) = seed_override(a.seed)? {
        cfg.master_seed = seed;
    }
    if let Some(path) = a.out.clone() {
        let format = match a.format.as_deref() {
            Some(f) => parse_format(f)?,
            None if path.extension().is_some_and(|e| e == "csv") => OutputFormat::Csv,
            None => OutputFormat::Json,
        };
        cfg.output = Some(OutputConfig { path, format });
    }
    let report = run_experiment(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&report.summary)?);
    Ok(())
}

fn gen(a: GenArgs) -> Result<()> {
    let spec: InstanceSpec = a.instance.parse()?;
    if matches!(spec, InstanceSpec::File(_)) {
        return Err(Error::Config {
            path: "instance".into(),
            message: "gen needs a generator, not a file".into(),
        });
    }
    let mut cfg = ExperimentConfig::new(spec, Algorithm::Alg1, EstimatorParams::default());
    cfg.instance.seed = Some(a.seed);
    let mut inst = prepare_instance(&cfg)?.instance;
    match a.kind.as_str() {
        "ins" => {}
        "rand" => inst.stream = streamcut::graph::shuffle_to_random_order(&inst.stream, a.seed)?,
        "dyn" => inst = gen_dynamic_stream(&inst, a.churn, derive_seed(a.seed, 0, SeedRole::Churn))?,
        other => {
            return Err(Error::Config {
                path: "kind".into(),
                message: format!("unknown stream kind `{other}`"),
            })
        }
    }
    io::save_instance(&inst, &a.out)?;
    eprintln!(
        "wrote {} events ({} vertices, OPT {}) to {}",
        inst.stream.len(),
        inst.stream.n,
        inst.opt_value,
        a.out.display()
    );
    Ok(())
}

fn exact(a: ExactArgs) -> Result<()> {
    let g = build_final_graph(&io::load_stream(&a.input)?)?;
    let cut = brute_force_maxcut_capped(&g, a.n_exact)?;
    let out = serde_json::json!({
        "n": g.n,
        "m": g.m(),
        "opt_value": cut.value,
        "assignment": cut.assignment,
    });
    println!("{out}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Gen(a) => gen(a),
        Command::Exact(a) => exact(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

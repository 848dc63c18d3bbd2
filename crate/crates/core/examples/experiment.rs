//! Seeded trials through the harness, with CSV output.

use streamcut::harness::{run_experiment, Algorithm, ExperimentConfig, OutputConfig, OutputFormat};
use streamcut::EstimatorParams;

fn main() -> streamcut::Result<()> {
    let params = EstimatorParams::new(0.4, 1.0 / 3.0)
        .with_cm(2000, 5)
        .with_sample_size(100);
    let mut cfg = ExperimentConfig::new(
        "hub:n=2000,mlow=30000,hubs=2,hubdeg=800".parse()?,
        Algorithm::Alg3,
        params,
    );
    cfg.trials = 20;
    cfg.median_k = 3;
    cfg.master_seed = 42;
    let out = std::env::temp_dir().join("streamcut_experiment.csv");
    cfg.output = Some(OutputConfig {
        path: out.clone(),
        format: OutputFormat::Csv,
    });

    let report = run_experiment(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&report.summary)?);
    println!("per-trial rows in {}", out.display());

    // The same run as a config file.
    println!("{}", serde_json::to_string_pretty(&cfg)?);
    Ok(())
}

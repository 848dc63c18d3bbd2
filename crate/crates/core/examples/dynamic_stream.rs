//! Insert/delete stream: the sketches only see the final graph.

use streamcut::estimators::{alg3_run, alg4_run};
use streamcut::graph::{gen_dynamic_stream, gen_planted_bipartite};
use streamcut::{EstimatorParams, NoisyOracle};

fn main() -> streamcut::Result<()> {
    let base = gen_planted_bipartite(300, 300, 6000, 4)?;
    let churned = gen_dynamic_stream(&base, 4000, 5)?;
    let x_star = base.opt_assignment.clone().expect("planted");
    // Few samplers: each one is a full l0 sketch over the n^2 edge slots.
    let params = EstimatorParams::new(0.4, 1.0 / 3.0)
        .with_cm(1000, 5)
        .with_sample_size(30);

    let mut oracle = NoisyOracle::new(x_star.clone(), 0.4, 6)?;
    let dynamic = alg4_run(&churned.stream, &mut oracle, &params, 7)?;
    let mut oracle = NoisyOracle::new(x_star, 0.4, 6)?;
    let insertion = alg3_run(&base.stream, &mut oracle, &params, 7)?;

    println!("events {} (final m {})", churned.stream.len(), base.stream.len());
    println!(
        "dynamic estimate {}  words {}",
        dynamic.report.estimate, dynamic.report.words_used
    );
    println!(
        "same tables as insertion-only: {}",
        dynamic.plus == insertion.plus && dynamic.minus == insertion.minus
    );
    println!(
        "same cross counter: {}",
        dynamic.cross_counter == insertion.cross_counter
    );
    Ok(())
}

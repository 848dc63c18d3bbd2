//! Random-order stream with a few high-degree vertices.

use streamcut::estimators::{alg1_run, alg2_run};
use streamcut::graph::{gen_hub_instance, shuffle_to_random_order};
use streamcut::{EstimatorParams, NoisyOracle};

fn main() -> streamcut::Result<()> {
    let inst = gen_hub_instance(20_000, 60_000, 3, 5000, 7)?;
    let stream = shuffle_to_random_order(&inst.stream, 8)?;
    let x_star = inst.opt_assignment.clone().expect("planted");
    let params = EstimatorParams::new(0.3, 1.0 / 3.0).with_sample_size(2000);

    let mut oracle = NoisyOracle::new(x_star.clone(), 0.3, 3)?;
    let report = alg2_run(&stream, &mut oracle, &params)?;
    println!("{}", serde_json::to_string_pretty(&report)?);

    // Against the plain counter. They agree when every hub is predicted correctly.
    println!("OPT {}", inst.opt_value);
    for seed in 0..6 {
        let mut oracle = NoisyOracle::new(x_star.clone(), 0.3, seed)?;
        let est = alg2_run(&stream, &mut oracle, &params)?.estimate;
        let mut oracle = NoisyOracle::new(x_star.clone(), 0.3, seed)?;
        let plain = alg1_run(&stream, &mut oracle)?;
        println!("seed {seed}: alg2 {est}  alg1 {plain}");
    }
    Ok(())
}

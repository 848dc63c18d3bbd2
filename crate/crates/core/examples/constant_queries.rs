//! Random-order estimator whose oracle queries do not grow with n.

use streamcut::estimators::{alg2_constant_query_run, constant_query_budget};
use streamcut::graph::{gen_planted_bipartite, shuffle_to_random_order};
use streamcut::{EstimatorParams, NoisyOracle};

fn main() -> streamcut::Result<()> {
    let params = EstimatorParams::new(0.4, 1.0 / 3.0).with_sample_size(10);
    let eta = Some(0.3);
    println!("query budget {}", constant_query_budget(&params, eta));
    for n in [1_000u32, 10_000, 100_000] {
        let inst = gen_planted_bipartite(n / 2, n / 2, 5 * n as usize, n as u64)?;
        let stream = shuffle_to_random_order(&inst.stream, 1)?;
        let mut oracle = NoisyOracle::new(inst.opt_assignment.clone().expect("planted"), 0.4, 2)?;
        let r = alg2_constant_query_run(&stream, &mut oracle, &params, eta, 3)?;
        println!(
            "n {n:>6}: queries {:>4}  estimate {}  ratio {:.3}",
            r.oracle_queries,
            r.estimate,
            r.estimate as f64 / inst.opt_value as f64
        );
    }
    Ok(())
}

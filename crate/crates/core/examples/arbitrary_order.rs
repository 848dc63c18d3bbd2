//! Arbitrary-order stream with CountMin side counts and an edge reservoir.

use streamcut::estimators::alg3_run;
use streamcut::graph::gen_hub_instance;
use streamcut::{EstimatorParams, NoisyOracle};

fn main() -> streamcut::Result<()> {
    let inst = gen_hub_instance(4000, 94_000, 4, 1500, 9)?;
    let x_star = inst.opt_assignment.clone().expect("planted");
    let params = EstimatorParams::new(0.4, 1.0 / 3.0)
        .with_cm(4000, 7)
        .with_sample_size(200);

    let mut oracle = NoisyOracle::new(x_star, 0.4, 1)?;
    let out = alg3_run(&inst.stream, &mut oracle, &params, 2)?;
    let r = &out.report;
    println!("m {}  OPT {}", inst.stream.len(), inst.opt_value);
    println!("ALG1 {}  ALG2 {}  estimate {}", r.alg1_value, r.alg2_value, r.estimate);
    println!(
        "{} candidates, first {:?}",
        out.h_tilde.len(),
        &out.h_tilde[..out.h_tilde.len().min(8)]
    );
    println!(
        "cross counter {}  words {}  queries {}",
        out.cross_counter, r.words_used, r.oracle_queries
    );
    println!("ratio {:.4}", r.estimate as f64 / inst.opt_value as f64);
    Ok(())
}

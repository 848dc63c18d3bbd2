//! Single-counter estimate on a bounded-degree planted instance.
//!
//! cargo run --example low_degree -- 0.2

use streamcut::estimators::alg1_run;
use streamcut::graph::gen_planted_bipartite;
use streamcut::NoisyOracle;

fn main() -> streamcut::Result<()> {
    let eps: f64 = std::env::args().nth(1).map_or(0.2, |s| s.parse().expect("eps"));
    let inst = gen_planted_bipartite(2000, 2000, 50_000, 1)?;
    let x_star = inst.opt_assignment.clone().expect("planted");

    println!("m = {}, OPT = {}", inst.stream.len(), inst.opt_value);
    for seed in 0..5 {
        let mut oracle = NoisyOracle::new(x_star.clone(), eps, seed)?;
        let x = alg1_run(&inst.stream, &mut oracle)?;
        println!(
            "seed {seed}: X = {x}  ratio {:.4}  (expected ~{:.4})",
            x as f64 / inst.opt_value as f64,
            0.5 + 2.0 * eps * eps
        );
    }
    Ok(())
}

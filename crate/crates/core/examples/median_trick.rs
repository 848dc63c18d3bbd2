//! Median of independent runs on a marginal instance.

use streamcut::estimators::alg1_run;
use streamcut::graph::gen_planted_bipartite;
use streamcut::harness::median_of_runs;
use streamcut::seed::{derive_seed, SeedRole};
use streamcut::NoisyOracle;

fn main() -> streamcut::Result<()> {
    let inst = gen_planted_bipartite(100, 100, 2000, 5)?;
    let x_star = inst.opt_assignment.clone().expect("planted");
    let run = |seed: u64| {
        let mut o = NoisyOracle::new(x_star.clone(), 0.1, seed)?;
        alg1_run(&inst.stream, &mut o)
    };
    let target = (0.5 + 0.1 * 0.1) * inst.opt_value as f64;

    for k in [1usize, 3, 9, 27] {
        let mut wins = 0;
        for meta in 0..200 {
            let v = median_of_runs(k, derive_seed(9, meta, SeedRole::Median), |s| run(s.oracle))?;
            wins += (v as f64 >= target) as usize;
        }
        println!("k = {k:>2}: success {:.3}", wins as f64 / 200.0);
    }
    Ok(())
}

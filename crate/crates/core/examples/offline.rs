//! Exact optimum by enumeration and the offline best-of-two cut.

use rand::Rng;
use streamcut::estimators::offline_best_of_two;
use streamcut::graph::brute_force_maxcut;
use streamcut::seed::rng_from_seed;
use streamcut::{Edge, EstimatorParams, Graph, NoisyOracle};

fn main() -> streamcut::Result<()> {
    let mut rng = rng_from_seed(3);
    let n = 14;
    let edges: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| Edge { u, v }))
        .filter(|_| rng.gen_bool(0.4))
        .collect();
    let g = Graph::new(n, edges)?;
    let cut = brute_force_maxcut(&g)?;
    println!("n {n}  m {}  OPT {}", g.m(), cut.value);

    for eps in [0.1, 0.3, 0.5] {
        let mut oracle = NoisyOracle::new(cut.assignment.clone(), eps, 1)?;
        let best = offline_best_of_two(&g, &mut oracle, &EstimatorParams::new(eps, 0.2))?;
        println!(
            "eps {eps}: value {} via {:?}  (greedy {}, hubs vs rest {}, {} hubs)",
            best.value,
            best.which,
            best.greedy_value,
            best.hubs_vs_rest,
            best.high_degree.len()
        );
    }
    Ok(())
}

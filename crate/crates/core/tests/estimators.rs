use proptest::prelude::*;

use streamcut::estimators::{
    alg1_run, alg2_run, alg3_run, alg3_run_with, alg4_run, alg4_run_with, greedy_extension, offline_best_of_two,
    small_m_fallback, FallbackOutcome,
};
use streamcut::graph::{
    brute_force_maxcut, build_final_graph, gen_dynamic_stream, gen_hub_instance, gen_planted_bipartite, io,
    shuffle_to_random_order,
};
use streamcut::oracle::EdgeAnnotatedOracle;
use streamcut::sketch::{ExactFrequencies, ExactL0};
use streamcut::{Edge, EstimatorParams, Graph, Label, NoisyOracle, PlantedInstance, PredictionOracle};

fn graph_strategy(max_n: u32) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n, 0..n), 0..=(n as usize * 2)).prop_map(move |pairs| {
            let edges: std::collections::BTreeSet<Edge> = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| Edge::new(a, b).unwrap())
                .collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn labels(n: u32, bits: u64) -> Vec<Label> {
    (0..n)
        .map(|v| {
            if bits >> (v % 64) & 1 == 1 {
                Label::Plus
            } else {
                Label::Minus
            }
        })
        .collect()
}

/// Exact-sketch closed form of the two streaming values for a candidate set.
fn closed_form(g: &Graph, y: &[Label], h_tilde: &[u32]) -> (u64, u64) {
    let in_h: Vec<bool> = (0..g.n).map(|v| h_tilde.contains(&v)).collect();
    let (mut low, mut hub_cross) = (0i64, 0i64);
    for e in g.edges() {
        let (a, b) = (e.u as usize, e.v as usize);
        if y[a] != y[b] {
            match (in_h[a], in_h[b]) {
                (false, false) => low += 1,
                (true, true) => hub_cross += 1,
                _ => {}
            }
        }
    }
    let adj = g.adjacency();
    let (mut maxes, mut degs) = (0u64, 0u64);
    for &v in h_tilde {
        let plus = adj[v as usize]
            .iter()
            .filter(|&&w| y[w as usize] == Label::Plus)
            .count() as u64;
        maxes += plus.max(adj[v as usize].len() as u64 - plus);
        degs += adj[v as usize].len() as u64;
    }
    ((low - hub_cross).max(0) as u64 + maxes, degs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alg3_exact_doubles_match_closed_form(g in graph_strategy(30), bits: u64, t in 1usize..8, seed: u64) {
        let x = labels(g.n, bits);
        let params = EstimatorParams::new(0.3, 0.2).with_sample_size(t);
        let mut o = NoisyOracle::new(x, 0.3, seed).unwrap();
        let out = alg3_run_with(&g.to_stream(), &mut o, &params, ExactFrequencies::new(), ExactFrequencies::new(), seed)
            .unwrap();
        let y: Vec<Label> = (0..g.n).map(|v| o.query(v).unwrap()).collect();
        let got = (out.report.alg1_value, out.report.alg2_value);
        prop_assert_eq!(got, closed_form(&g, &y, &out.h_tilde));
    }

    #[test]
    fn alg4_exact_doubles_ignore_churn(g in graph_strategy(20), bits: u64, churn in 0usize..20, seed: u64) {
        let free = g.n as usize * (g.n as usize - 1) / 2 - g.m();
        let base = PlantedInstance { stream: g.to_stream(), opt_value: 0, opt_assignment: None, opt_is_exact: false };
        let dynamic = gen_dynamic_stream(&base, churn.min(free), seed).unwrap();
        let params = EstimatorParams::new(0.3, 0.2).with_sample_size(3);
        let mut o = NoisyOracle::new(labels(g.n, bits), 0.3, seed).unwrap();
        let out = alg4_run_with(&dynamic.stream, &mut o, &params, ExactFrequencies::new(), ExactFrequencies::new(),
            |i| ExactL0::new(seed ^ i as u64)).unwrap();
        let y: Vec<Label> = (0..g.n).map(|v| o.query(v).unwrap()).collect();
        prop_assert_eq!((out.report.alg1_value, out.report.alg2_value), closed_form(&g, &y, &out.h_tilde));
        prop_assert_eq!(build_final_graph(&dynamic.stream).unwrap(), g);
    }

    #[test]
    fn perfect_predictions_give_the_optimum(g in graph_strategy(12)) {
        let cut = brute_force_maxcut(&g).unwrap();
        let mut o = NoisyOracle::new(cut.assignment, 0.5, 0).unwrap();
        prop_assert_eq!(alg1_run(&g.to_stream(), &mut o).unwrap(), cut.value as u64);
    }

    #[test]
    fn offline_never_exceeds_optimum(g in graph_strategy(12), eps in 0.05f64..0.5, seed: u64) {
        let cut = brute_force_maxcut(&g).unwrap();
        let mut o = NoisyOracle::new(cut.assignment, eps, seed).unwrap();
        let best = offline_best_of_two(&g, &mut o, &EstimatorParams::new(eps, 0.2)).unwrap();
        prop_assert!(best.value <= cut.value as u64);
        prop_assert!(best.greedy_value >= best.static_value);
        prop_assert_eq!(best.value, best.greedy_value.max(best.hubs_vs_rest));
    }

    #[test]
    fn fallback_is_exact_on_tiny_streams(g in graph_strategy(10)) {
        match small_m_fallback(&g.to_stream(), &EstimatorParams::default(), 24).unwrap() {
            FallbackOutcome::Exact { value, assignment } => {
                prop_assert_eq!(value, brute_force_maxcut(&g).unwrap().value as u64);
                prop_assert_eq!(g.cut_value(&assignment) as u64, value);
            }
            FallbackOutcome::PassThrough { .. } => prop_assert!(g.m() > 0),
        }
    }

    #[test]
    fn greedy_extension_takes_the_larger_side(hubs in proptest::collection::vec((0u64..100, 0u64..100), 0..10), base in 0u64..1000) {
        let ext = greedy_extension(base, &hubs);
        let want: u64 = base + hubs.iter().map(|&(a, b)| a.max(b)).sum::<u64>();
        prop_assert_eq!(ext.value, want);
        prop_assert_eq!(ext.sides.len(), hubs.len());
    }
}

#[test]
fn every_estimator_beats_half_on_a_hub_instance() {
    let inst = gen_hub_instance(6000, 40_000, 3, 2500, 21).unwrap();
    let x = inst.opt_assignment.clone().unwrap();
    let opt = inst.opt_value as f64;
    let params = EstimatorParams::new(0.4, 1.0 / 3.0)
        .with_cm(3000, 5)
        .with_sample_size(300);
    let rand = shuffle_to_random_order(&inst.stream, 1).unwrap();

    let mut o = NoisyOracle::new(x.clone(), 0.4, 5).unwrap();
    let a2 = alg2_run(&rand, &mut o, &params).unwrap();
    let mut o = NoisyOracle::new(x.clone(), 0.4, 5).unwrap();
    let a3 = alg3_run(&inst.stream, &mut o, &params, 6).unwrap();
    let small = params.clone().with_sample_size(8);
    let dynamic = gen_dynamic_stream(&inst, 2000, 7).unwrap();
    let mut o = NoisyOracle::new(x, 0.4, 5).unwrap();
    let a4 = alg4_run(&dynamic.stream, &mut o, &small, 6).unwrap();

    for (name, est) in [
        ("alg2", a2.estimate),
        ("alg3", a3.report.estimate),
        ("alg4", a4.report.estimate),
    ] {
        let ratio = est as f64 / opt;
        assert!(ratio > 0.5 + 0.4 * 0.4 / 32.0, "{name}: ratio {ratio}");
    }
}

#[test]
fn edge_annotated_oracle_suffices_for_streaming_estimators() {
    let inst = gen_planted_bipartite(200, 200, 3000, 2).unwrap();
    let x = inst.opt_assignment.clone().unwrap();
    let params = EstimatorParams::new(0.3, 0.2).with_cm(500, 4).with_sample_size(40);
    let rand = shuffle_to_random_order(&inst.stream, 3).unwrap();

    let mut o = EdgeAnnotatedOracle::new(NoisyOracle::new(x.clone(), 0.3, 1).unwrap());
    let annotated = alg3_run(&inst.stream, &mut o, &params, 4).unwrap().report;
    let mut o = NoisyOracle::new(x.clone(), 0.3, 1).unwrap();
    assert_eq!(annotated, alg3_run(&inst.stream, &mut o, &params, 4).unwrap().report);

    let mut o = EdgeAnnotatedOracle::new(NoisyOracle::new(x.clone(), 0.3, 1).unwrap());
    let annotated = alg2_run(&rand, &mut o, &params).unwrap();
    let mut o = NoisyOracle::new(x, 0.3, 1).unwrap();
    assert_eq!(annotated, alg2_run(&rand, &mut o, &params).unwrap());
}

#[test]
fn stream_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.stream");
    let inst = gen_hub_instance(100, 300, 2, 40, 9).unwrap();
    let inst = gen_dynamic_stream(&inst, 30, 1).unwrap();
    io::save_instance(&inst, &path).unwrap();
    assert_eq!(io::load_instance(&path).unwrap(), inst);
}

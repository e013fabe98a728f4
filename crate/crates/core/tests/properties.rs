//! Invariants checked over generated inputs.

use proptest::prelude::*;

use streampart::analysis::{
    delta_from_gamma, expected_no_edge_arrivals, gamma_from_delta, lemma2_exact_prob, lemma2_mirrored_prob,
};
use streampart::graph::{generate_gnp, generate_planted, random_order, stream_events, Graph, PlantedParams};
use streampart::harness::{ExperimentSpec, QValue};
use streampart::metrics::{edges_cut, euclidean_error, recovery_vector};
use streampart::partition::{capacity, run_partitioner, Algorithm, PartitionerConfig};
use streampart::urn::{dominance, run_coupled, run_urn, CoupledProcessConfig, CoupledVariant};

fn algorithm() -> impl Strategy<Value = Algorithm> {
    prop::sample::select(Algorithm::ALL.to_vec())
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..40, 0.0f64..0.6, any::<u64>()).prop_map(|(n, p, seed)| generate_gnp(n, p, false, seed).unwrap())
}

fn multigraph() -> impl Strategy<Value = Graph> {
    (2u32..15)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n, 1u32..4), 0..40)))
        .prop_map(|(n, raw)| {
            let edges = raw.into_iter().filter(|(u, v, _)| u != v);
            Graph::from_edges(n as usize, edges).unwrap()
        })
}

/// Edges cut by brute force over every vertex pair.
fn brute_force_cut(graph: &Graph, assignment: &[usize]) -> u64 {
    let n = graph.n() as u32;
    let mut cut = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if graph.multiplicity(u, v) > 0 && assignment[u as usize] != assignment[v as usize] {
                cut += 1;
            }
        }
    }
    cut
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn edge_list_round_trip(graph in multigraph()) {
        let mut buf = Vec::new();
        graph.write_edge_list(&mut buf).unwrap();
        let back = Graph::read_edge_list(buf.as_slice()).unwrap();
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), graph.edges().collect::<Vec<_>>());
        prop_assert_eq!(back.n(), graph.n());
    }

    #[test]
    fn labelled_round_trip(l in 1usize..5, size in 1usize..6, p in 0.0f64..1.0, q in 0.0f64..0.3, seed in any::<u64>()) {
        let graph = generate_planted(&PlantedParams::equal(l * size, l, p, q).unwrap(), seed).unwrap();
        let mut buf = Vec::new();
        graph.write_edge_list(&mut buf).unwrap();
        let back = Graph::read_edge_list(buf.as_slice()).unwrap();
        prop_assert_eq!(back.labels(), graph.labels());
        prop_assert_eq!(back.edge_count(), graph.edge_count());
    }

    #[test]
    fn stream_reveals_every_edge_once(graph in multigraph(), seed in any::<u64>()) {
        let order = random_order(graph.n(), seed).unwrap();
        let positions = order.positions();
        let mut revealed = 0u64;
        for event in stream_events(&graph, &order).unwrap() {
            for &(u, _) in &event.revealed {
                prop_assert!(positions[u as usize] < positions[event.vertex as usize]);
            }
            prop_assert_eq!(event.full_degree, graph.weighted_degree(event.vertex));
            revealed += event.revealed_multiplicity();
        }
        prop_assert_eq!(revealed, graph.total_multiplicity());
    }

    #[test]
    fn partitioner_respects_capacity_and_assigns_once(
        graph in small_graph(),
        alg in algorithm(),
        k in 1usize..6,
        epsilon in 0.0f64..1.5,
        gamma in 0.1f64..3.0,
        seed in any::<u64>(),
    ) {
        let n = graph.n();
        let order = random_order(n, seed).unwrap();
        let config = PartitionerConfig::new(alg, k, epsilon, seed).with_gamma(gamma);
        let state = run_partitioner(&graph, &order, &config).unwrap();
        let c = capacity(n, k, epsilon);
        prop_assert!(c * k as u64 >= n as u64);
        prop_assert_eq!(state.loads().iter().sum::<u64>(), n as u64);
        prop_assert!(state.loads().iter().all(|&load| load <= c));
        let assignment = state.assignment().unwrap();
        let mut seen = vec![false; n];
        for part in 0..k {
            prop_assert_eq!(state.members(part).len() as u64, state.loads()[part]);
            for &v in state.members(part) {
                prop_assert!(!seen[v as usize]);
                seen[v as usize] = true;
                prop_assert_eq!(assignment[v as usize], part);
            }
        }
        prop_assert_eq!(edges_cut(&graph, &state, false).unwrap(), brute_force_cut(&graph, &assignment));
    }

    #[test]
    fn runs_are_reproducible(graph in small_graph(), alg in algorithm(), seed in any::<u64>()) {
        let order = random_order(graph.n(), seed).unwrap();
        let config = PartitionerConfig::new(alg, 3, 0.2, seed).with_gamma(1.5);
        let a = run_partitioner(&graph, &order, &config).unwrap();
        let b = run_partitioner(&graph, &order, &config).unwrap();
        prop_assert_eq!(a.assignment().unwrap(), b.assignment().unwrap());
    }

    #[test]
    fn recovery_bounds(l in 1usize..6, size in 1usize..12, k in 1usize..5, p in 0.0f64..1.0, seed in any::<u64>()) {
        let n = l * size;
        let graph = generate_planted(&PlantedParams::equal(n, l, p, 0.05).unwrap(), seed).unwrap();
        let order = random_order(n, seed).unwrap();
        let state = run_partitioner(&graph, &order, &PartitionerConfig::new(Algorithm::ArgmaxGreedy, k, 0.1, seed)).unwrap();
        let r = recovery_vector(&graph, &state).unwrap();
        prop_assert_eq!(r.len(), l);
        for &ri in &r {
            prop_assert!(ri >= 1.0 / k as f64 - 1e-12 && ri <= 1.0);
        }
        let e = euclidean_error(&r);
        prop_assert!(e >= 0.0 && e <= (l as f64).sqrt() * (1.0 - 1.0 / k as f64) + 1e-9);
    }

    #[test]
    fn urn_conserves_balls(initial in prop::collection::vec(0u64..5, 1..6), gamma in 0.0f64..3.0, steps in 0u64..400, seed in any::<u64>()) {
        prop_assume!(initial.iter().any(|&m| m > 0));
        let total: u64 = initial.iter().sum();
        let run = run_urn(initial.clone(), gamma, steps, seed).unwrap();
        prop_assert_eq!(run.state.loads().iter().sum::<u64>(), total + steps);
        for (now, start) in run.state.loads().iter().zip(&initial) {
            prop_assert!(now >= start);
            if *start == 0 {
                prop_assert_eq!(*now, 0);
            }
        }
        let fractions = run.state.fractions();
        prop_assert!((fractions.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(dominance(run.state.loads()).fraction >= 1.0 / initial.len() as f64 - 1e-12);
    }

    #[test]
    fn coupled_process_places_every_vertex(n in 0usize..300, p in 0.0f64..1.0, k in 2usize..6, arg in any::<bool>(), seed in any::<u64>()) {
        let variant = if arg { CoupledVariant::Argmax } else { CoupledVariant::Proportional };
        let run = run_coupled(&CoupledProcessConfig { n, p, k, variant, seed }).unwrap();
        prop_assert_eq!(run.state.loads().iter().sum::<u64>(), n as u64);
        prop_assert_eq!(run.trajectory.final_loads(), run.state.loads());
    }

    #[test]
    fn gamma_delta_round_trip(x in 1e-6f64..0.999_999, k in 2usize..50) {
        let there = delta_from_gamma(gamma_from_delta(x, k).unwrap(), k).unwrap();
        prop_assert!((there - x).abs() <= 1e-12 * x.max(1e-3));
    }

    #[test]
    fn lemma2_probabilities_are_consistent(j in 1u64..400, delta in 0.0f64..0.49) {
        let win = lemma2_exact_prob(j, delta).unwrap();
        let lose = lemma2_mirrored_prob(j, delta).unwrap();
        prop_assert!((0.0..=1.0).contains(&win));
        prop_assert!(win + lose <= 1.0 + 1e-12);
        prop_assert!(win >= lose - 1e-12);
    }

    #[test]
    fn spec_text_round_trip(
        n in prop::collection::vec(1usize..50, 1..3),
        p in prop::collection::vec(0.0f64..1.0, 1..3),
        runs in 1usize..30,
        seed in any::<u64>(),
        shared in any::<bool>(),
    ) {
        let spec = ExperimentSpec {
            n: n.iter().map(|x| x * 4).collect(),
            l: vec![4],
            p,
            q: vec![QValue::PerKl(6.0), QValue::Absolute(0.001)],
            runs_per_cell: runs,
            master_seed: seed,
            shared_graph: shared,
            ..ExperimentSpec::default()
        };
        prop_assert_eq!(ExperimentSpec::parse(&spec.to_text()).unwrap(), spec);
    }
}

#[test]
fn no_edge_ratio_approaches_a_third() {
    let mut prev = 0.0;
    for n in [4usize, 10, 100, 1_000, 10_000, 100_000, 1_000_000] {
        let ratio = expected_no_edge_arrivals(n).unwrap() / n as f64;
        assert!(ratio < 1.0 / 3.0 && ratio > prev, "n={n} ratio={ratio}");
        prev = ratio;
    }
}

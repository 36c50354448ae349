use proptest::prelude::*;
use sbs_core::metrics::{diversity_all, sbs, standardize, weighted_betweenness, DiversityMode};
use sbs_core::network::{CooccurrenceNetwork, NetworkParams};
use sbs_testkit::{betweenness_oracle, labels, random_connected_graph, rng};

fn from_index_edges(n: usize, edges: &[(usize, usize, u64)], scale: u64) -> CooccurrenceNetwork {
    let names = labels(n);
    CooccurrenceNetwork::from_parts(
        NetworkParams::new(5, 1).unwrap(),
        names.iter().enumerate().map(|(i, t)| (t.clone(), 1 + i as u64 % 3)),
        edges.iter().map(|&(a, b, w)| (names[a].clone(), names[b].clone(), w * scale)),
    )
    .unwrap()
}

/// Connected graph, optionally followed by a few isolated nodes.
fn graph() -> impl Strategy<Value = (usize, Vec<(usize, usize, u64)>)> {
    (any::<u64>(), 2usize..9, 0usize..3).prop_map(|(seed, n, isolates)| {
        let edges = random_connected_graph(&mut rng(seed), n, 5, 0.35);
        (n + isolates, edges)
    })
}

fn index_order(net: &CooccurrenceNetwork) -> Vec<usize> {
    // labels n0..n9 sort like their indices only below ten nodes
    net.terms().iter().map(|t| t[1..].parse().unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn betweenness_matches_path_enumeration((n, edges) in graph()) {
        let net = from_index_edges(n, &edges, 1);
        let got = weighted_betweenness(&net);
        let want = betweenness_oracle(n, &edges, 1e-12);
        for (k, &i) in index_order(&net).iter().enumerate() {
            prop_assert!((got[k] - want[i]).abs() <= 1e-9, "node {i}: {} vs {}", got[k], want[i]);
        }
    }

    #[test]
    fn betweenness_ignores_thread_count((n, edges) in graph()) {
        let net = from_index_edges(n, &edges, 1);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| weighted_betweenness(&net))
        };
        let one = run(1);
        prop_assert_eq!(one.clone(), run(4));
    }

    #[test]
    fn scaling_weights_leaves_scores_unchanged((n, edges) in graph(), degree_mode in any::<bool>()) {
        let mode = if degree_mode { DiversityMode::Degree } else { DiversityMode::Distinctiveness };
        let base = from_index_edges(n, &edges, 1);
        let scaled = from_index_edges(n, &edges, 10);
        let terms = base.terms().to_vec();
        let a = sbs(&base, &terms, mode).unwrap();
        let b = sbs(&scaled, &terms, mode).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(&x.term, &y.term);
            prop_assert!((x.z_prevalence - y.z_prevalence).abs() <= 1e-9);
            prop_assert!((x.z_diversity - y.z_diversity).abs() <= 1e-9);
            prop_assert!((x.z_connectivity - y.z_connectivity).abs() <= 1e-9);
            prop_assert!((x.sbs - y.sbs).abs() <= 1e-9);
        }
    }

    #[test]
    fn diversity_bounds((n, edges) in graph()) {
        let net = from_index_edges(n, &edges, 1);
        let degree = diversity_all(&net, DiversityMode::Degree).unwrap();
        let distinct = diversity_all(&net, DiversityMode::Distinctiveness).unwrap();
        let cap = ((n - 1) as f64).log10();
        for (d, x) in degree.iter().zip(&distinct) {
            prop_assert!(*d <= (n - 1) as f64);
            prop_assert!(*x >= 0.0 && *x <= d * cap + 1e-12);
        }
    }

    #[test]
    fn sbs_is_sum_of_standardized_components((n, edges) in graph()) {
        let net = from_index_edges(n, &edges, 1);
        let terms = net.terms().to_vec();
        let reports = sbs(&net, &terms, DiversityMode::Distinctiveness).unwrap();
        for r in &reports {
            prop_assert!((r.sbs - (r.z_prevalence + r.z_diversity + r.z_connectivity)).abs() <= 1e-12);
        }
        for w in reports.windows(2) {
            prop_assert!(w[0].sbs > w[1].sbs || (w[0].sbs == w[1].sbs && w[0].term < w[1].term));
        }
        for z in [
            reports.iter().map(|r| r.z_prevalence).collect::<Vec<_>>(),
            reports.iter().map(|r| r.z_diversity).collect(),
            reports.iter().map(|r| r.z_connectivity).collect(),
        ] {
            let mean = z.iter().sum::<f64>() / z.len() as f64;
            prop_assert!(mean.abs() < 1e-9);
        }
    }

    #[test]
    fn standardize_moments(values in prop::collection::vec(-1e3f64..1e3, 2..40)) {
        let z = standardize(&values);
        prop_assert_eq!(z.len(), values.len());
        let n = z.len() as f64;
        let mean = z.iter().sum::<f64>() / n;
        let var = z.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        if values.iter().all(|v| *v == values[0]) {
            prop_assert!(z.iter().all(|x| *x == 0.0));
        } else {
            prop_assert!(mean.abs() < 1e-9);
            prop_assert!((var - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn standardize_is_affine_invariant(
        values in prop::collection::vec(-100f64..100.0, 2..30),
        scale in 0.1f64..50.0,
        shift in -100f64..100.0,
    ) {
        let moved: Vec<f64> = values.iter().map(|v| v * scale + shift).collect();
        for (a, b) in standardize(&values).iter().zip(standardize(&moved)) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}

#[test]
fn constant_components_standardize_to_zero() {
    assert_eq!(standardize(&[4.0, 4.0, 4.0]), [0.0, 0.0, 0.0]);
}

mod common;

use proptest::prelude::*;

use common::{nmi_oracle, Dense};
use weakties::community::{aggregate, louvain, modularity, LocalMoving, LouvainConfig, Partition};
use weakties::ingest::{extract_visited_core, merge_samples, CrawlSample};
use weakties::stats::{ccdf, nmi};
use weakties::ties::{classify_ties, tie_counts_per_node};
use weakties::{build_graph, Graph};

fn raw_edges(max_id: u64, max_len: usize) -> impl Strategy<Value = Vec<(u64, u64)>> {
    prop::collection::vec((0..max_id, 0..max_id), 0..max_len)
}

/// A graph with at least one edge plus a labeling of its vertices.
fn graph_and_labels(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (2..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..n, 0..n), 1..4 * n),
                prop::collection::vec(0..n, n),
            )
        })
        .prop_filter_map("needs an edge", |(n, pairs, labels)| {
            let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            let g = Graph::from_edges(n, edges).ok()?;
            (g.edge_count() > 0).then_some((g, labels))
        })
}

proptest! {
    #[test]
    fn build_is_idempotent(edges in raw_edges(40, 120)) {
        let once = build_graph(&edges);
        let again = build_graph(&once.labeled_edges().collect::<Vec<_>>());
        prop_assert_eq!(&once.graph, &again.graph);
        prop_assert_eq!(once.labels(), again.labels());
    }

    #[test]
    fn handshake_and_simplicity(edges in raw_edges(40, 120)) {
        let built = build_graph(&edges);
        let g = &built.graph;
        prop_assert_eq!(g.degrees().sum::<usize>(), 2 * g.edge_count());
        g.check_invariants().unwrap();
        for v in 0..g.node_count() {
            prop_assert!(!g.neighbors(v).contains(&v));
        }
        let loops = edges.iter().filter(|(u, v)| u == v).count();
        prop_assert_eq!(built.stats.self_loops_dropped, loops);
        prop_assert_eq!(
            built.stats.input_pairs,
            loops + built.stats.duplicates_dropped + g.edge_count()
        );
    }

    #[test]
    fn ccdf_is_a_survival_function(samples in prop::collection::vec(-50.0f64..50.0, 1..80)) {
        let c = ccdf(&samples).unwrap();
        let pts = c.points();
        prop_assert!(pts.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 >= w[1].1));
        prop_assert!(pts.iter().all(|&(_, p)| (0.0..=1.0).contains(&p)));
        prop_assert_eq!(pts.last().unwrap().1, 0.0);
    }

    #[test]
    fn nmi_matches_oracle_and_is_symmetric(
        (a, b) in (1usize..60).prop_flat_map(|n| (
            prop::collection::vec(0usize..5, n),
            prop::collection::vec(0usize..7, n),
        ))
    ) {
        let (pa, pb) = (Partition::from_labels(&a), Partition::from_labels(&b));
        let ab = nmi(&pa, &pb).unwrap();
        prop_assert!((ab - nmi(&pb, &pa).unwrap()).abs() < 1e-12);
        prop_assert!((ab - nmi_oracle(&a, &b)).abs() < 1e-9);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&ab));
        prop_assert!((nmi(&pa, &pa).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nmi_ignores_label_names(a in prop::collection::vec(0usize..6, 1..50), shift in 1usize..100) {
        let renamed: Vec<usize> = a.iter().map(|&c| (c + shift) * 7).collect();
        let b: Vec<usize> = a.iter().rev().copied().collect();
        let (pa, pr, pb) = (
            Partition::from_labels(&a),
            Partition::from_labels(&renamed),
            Partition::from_labels(&b),
        );
        prop_assert!((nmi(&pa, &pb).unwrap() - nmi(&pr, &pb).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn ties_ignore_community_names((g, labels) in graph_and_labels(25), shift in 1usize..50) {
        let renamed: Vec<usize> = labels.iter().map(|&c| c * 3 + shift).collect();
        let t1 = classify_ties(&g, &Partition::from_labels(&labels)).unwrap();
        let t2 = classify_ties(&g, &Partition::from_labels(&renamed)).unwrap();
        prop_assert_eq!(&t1, &t2);
        let counts = tie_counts_per_node(&g, &t1).unwrap();
        for (v, c) in counts.iter().enumerate() {
            prop_assert_eq!(c.degree(), g.degree(v).unwrap());
        }
        prop_assert_eq!(t1.weak_count() + t1.strong_count(), g.edge_count());
    }

    #[test]
    fn merging_samples_commutes(
        a in raw_edges(30, 60),
        b in raw_edges(30, 60),
    ) {
        let (sa, sb) = (CrawlSample::from_ego_edges(a), CrawlSample::from_ego_edges(b));
        let (ab, rab) = merge_samples(&sa, &sb);
        let (ba, rba) = merge_samples(&sb, &sa);
        prop_assert_eq!(rab, rba);
        prop_assert_eq!(ab.visited(), ba.visited());
        let (core_ab, _) = extract_visited_core(&ab);
        let (core_ba, _) = extract_visited_core(&ba);
        prop_assert_eq!(&core_ab.graph, &core_ba.graph);
        prop_assert_eq!(core_ab.labels(), core_ba.labels());
        for (u, v) in core_ab.labeled_edges() {
            prop_assert!(ab.is_visited(u) && ab.is_visited(v));
        }
    }

    #[test]
    fn modularity_matches_dense_oracle((g, labels) in graph_and_labels(20)) {
        let q = modularity(&g, &Partition::from_labels(&labels)).unwrap();
        prop_assert!((q - Dense::from_graph(&g).modularity(&labels)).abs() < 1e-12);
        prop_assert!((-1.0..=1.0).contains(&q));
        prop_assert!(modularity(&g, &Partition::whole(g.node_count())).unwrap().abs() < 1e-12);
    }

    #[test]
    fn gain_equals_recomputed_delta(
        (g, labels) in graph_and_labels(24),
        pick in any::<prop::sample::Index>(),
        target in any::<prop::sample::Index>(),
    ) {
        let p = Partition::from_labels(&labels);
        let state = LocalMoving::from_partition(&g, &p).unwrap();
        let v = pick.index(g.node_count());
        let c = target.index(state.slot_count());
        let dense = Dense::from_graph(&g);
        let mut after = p.assignment().to_vec();
        after[v] = c;
        let expected = dense.modularity(&after) - dense.modularity(p.assignment());
        prop_assert!((state.move_gain(v, c) - expected).abs() < 1e-12);
    }

    #[test]
    fn aggregation_preserves_modularity((g, labels) in graph_and_labels(24)) {
        let p = Partition::from_labels(&labels);
        let coarse = aggregate(&g, &p).unwrap();
        let q = modularity(&g, &p).unwrap();
        let dense = Dense::from_weighted(&coarse);
        let ids: Vec<usize> = (0..coarse.node_count()).collect();
        prop_assert!((q - dense.modularity(&ids)).abs() < 1e-12);
        prop_assert!((coarse.total_weight() - g.edge_count() as f64).abs() < 1e-12);
    }

    #[test]
    fn dendrogram_nests_and_improves((g, _) in graph_and_labels(30), seed in any::<u64>()) {
        let d = louvain(&g, &LouvainConfig::with_seed(seed)).unwrap();
        for w in d.levels().windows(2) {
            prop_assert!(w[0].partition.refines(&w[1].partition));
            prop_assert!(w[1].modularity >= w[0].modularity - 1e-12);
        }
        for level in d.levels() {
            let q = Dense::from_graph(&g).modularity(level.partition.assignment());
            prop_assert!((q - level.modularity).abs() < 1e-12);
        }
        let again = louvain(&g, &LouvainConfig::with_seed(seed)).unwrap();
        prop_assert_eq!(d, again);
    }
}

#[test]
fn every_accepted_move_has_positive_gain() {
    let (g, _) = weakties::synth::planted_partition(60, 3, 0.4, 0.05, 9).unwrap();
    let mut state = LocalMoving::new(&g).unwrap();
    let order: Vec<usize> = (0..g.node_count()).collect();
    loop {
        let before = state.modularity();
        let stats = state.sweep(&order);
        if stats.moves == 0 {
            break;
        }
        assert!(stats.min_accepted_gain > 0.0);
        assert!(state.modularity() > before);
    }
}

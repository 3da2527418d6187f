//! Cross-module invariants on random inputs: round-trips, decomposition vs
//! oracles, plan accounting, signature invariance, and orbit consistency.

use proptest::prelude::*;

use cosparse::connectivity::{
    bfs_distances, biconnected_decomposition, component_count, connected_components,
    verify_block_bruteforce,
};
use cosparse::graph::{generators, parse_edge_list, parse_graph6, to_graph6, Graph};
use cosparse::oracle::{enumerate_automorphisms, max_internally_disjoint_paths};
use cosparse::refine::{distinguishes, engine_signature, Engine};
use cosparse::rrwp::plain_pair_features;
use cosparse::sparsify::{cosparsify_plan, dense_plan, distance_bounded_plan, plan_stats};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::new(n, edges).expect("generated edges are valid")
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(g in arb_graph(10)) {
        let text = g.to_edge_list();
        prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn graph6_round_trip(g in arb_graph(12)) {
        let enc = to_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn walk_matrix_rows_are_stochastic(g in arb_graph(9)) {
        let m = cosparse::graph::random_walk_matrix::<f64>(&g);
        for u in 0..g.node_count() {
            let sum: f64 = m.row(u).iter().sum();
            if g.degree(u) == 0 {
                prop_assert_eq!(sum, 0.0);
            } else {
                prop_assert!((sum - 1.0).abs() <= 1e-12);
            }
        }
    }

    // Every reported block passes the brute-force membership oracle, and no
    // maximal biconnected set is missing.
    #[test]
    fn decomposition_blocks_pass_oracle(g in arb_graph(10)) {
        let d = biconnected_decomposition(&g);
        for block in &d.blocks {
            prop_assert!(verify_block_bruteforce(&g, block), "block {:?}", block);
        }
        let oracle = cosparse::connectivity::maximal_biconnected_sets_bruteforce(&g);
        prop_assert_eq!(&d.blocks, &oracle);
    }

    #[test]
    fn cut_node_count_matches_deletion_rule(g in arb_graph(10)) {
        let d = biconnected_decomposition(&g);
        prop_assert_eq!(&d.cut_nodes, &cosparse::connectivity::cut_nodes_bruteforce(&g));
    }

    #[test]
    fn plan_counts_follow_formulas(g in arb_graph(9)) {
        let d = biconnected_decomposition(&g);
        let plan = cosparsify_plan(&g, &d).unwrap();
        let recount = plan_stats(&plan);
        prop_assert_eq!(&recount, plan.stats());
        let pair_formula: u64 = d.components.iter().map(|c| (c.len() * c.len()) as u64).sum();
        let triple_formula: u64 = d
            .blocks
            .iter()
            .map(|b| b.len() as u64)
            .filter(|&s| s >= 3)
            .map(|s| s * (s - 1) * (s - 2))
            .sum();
        prop_assert_eq!(recount.pair_count, pair_formula);
        prop_assert_eq!(recount.triple_count, triple_formula);

        // Never more triples than the dense distinct count; equality exactly
        // when the whole node set is one biconnected block.
        let n = g.node_count() as u64;
        let dense_triples = n * (n - 1) * (n - 2);
        prop_assert!(recount.triple_count <= dense_triples);
        let whole_graph_block = d.blocks.len() == 1 && d.blocks[0].len() == g.node_count();
        if n >= 3 {
            prop_assert_eq!(recount.triple_count == dense_triples, whole_graph_block);
        }
    }

    #[test]
    fn vacuous_distance_bound_is_the_cosparsified_plan(g in arb_graph(8)) {
        let d = biconnected_decomposition(&g);
        let full = cosparsify_plan(&g, &d).unwrap();
        let bounded = distance_bounded_plan(&g, &d, g.node_count().max(1)).unwrap();
        prop_assert!(bounded.same_structure(&full));
    }

    #[test]
    fn signatures_are_isomorphism_invariant(g in arb_graph(8), seed in any::<u64>()) {
        let perm = generators::random_permutation(g.node_count(), seed);
        let h = g.permuted(&perm);
        for engine in [Engine::Wl1, Engine::Fwl2Dense, Engine::Fwl2Cosp, Engine::Fwl2CospDist(3)] {
            prop_assert_eq!(engine_signature(&g, engine), engine_signature(&h, engine));
        }
    }

    // Distinctions never disappear when moving up the hierarchy, and the
    // sparsified engine induces exactly the dense engine's distinctions.
    #[test]
    fn engine_hierarchy(a in arb_graph(7), b in arb_graph(7)) {
        let wl1 = distinguishes(&a, &b, Engine::Wl1);
        let dense = distinguishes(&a, &b, Engine::Fwl2Dense);
        let cosp = distinguishes(&a, &b, Engine::Fwl2Cosp);
        if wl1 {
            prop_assert!(dense, "node refinement separated a pair the dense engine missed");
        }
        prop_assert_eq!(dense, cosp);
    }

    #[test]
    fn bfs_matches_component_structure(g in arb_graph(10)) {
        let comp = connected_components(&g);
        let dist = bfs_distances(&g, 0);
        for v in 0..g.node_count() {
            prop_assert_eq!(dist[v].is_some(), comp[v] == comp[0]);
        }
    }
}

// Pair orbits under the automorphism group refine the stable coloring: two
// pairs related by an automorphism always share a stable color.
#[test]
fn stable_colors_respect_pair_orbits() {
    for seed in 0..8u64 {
        let g = generators::random_gnp(6, 0.45, seed);
        let autos = enumerate_automorphisms(&g);
        let plan = dense_plan(&g);
        let c = cosparse::refine::init_coloring(&plan, &plain_pair_features(&g)).unwrap();
        let (stable, _) = cosparse::refine::refine_to_stable(c, None);
        for pi in &autos {
            for (pos, &(u, v)) in plan.pairs().iter().enumerate() {
                let image = plan
                    .pair_position(pi[u as usize], pi[v as usize])
                    .expect("dense plan holds all pairs");
                assert_eq!(
                    stable.colors()[pos],
                    stable.colors()[image],
                    "seed {seed}: orbit image of ({u},{v}) changed color"
                );
            }
        }
    }
}

// On a distance-transitive graph the orbit count and the stable color count
// coincide; cross-checked against the enumerated automorphism group.
#[test]
fn petersen_orbits_equal_stable_colors() {
    let g = generators::petersen();
    let autos = enumerate_automorphisms(&g);
    assert_eq!(autos.len(), 120);
    let plan = dense_plan(&g);
    let mut orbit_of = vec![usize::MAX; plan.pair_count()];
    let mut orbits = 0;
    for pos in 0..plan.pair_count() {
        if orbit_of[pos] != usize::MAX {
            continue;
        }
        let (u, v) = plan.pairs()[pos];
        for pi in &autos {
            let image = plan
                .pair_position(pi[u as usize], pi[v as usize])
                .expect("dense plan");
            orbit_of[image] = orbits;
        }
        orbits += 1;
    }
    assert_eq!(orbits, 3);
    let c = cosparse::refine::init_coloring(&plan, &plain_pair_features(&g)).unwrap();
    let (stable, _) = cosparse::refine::refine_to_stable(c, None);
    assert_eq!(stable.num_colors(), orbits);
}

// Lemma-2 premise at desk scale: when a same-component pair shares no block
// of three or more nodes, either the direct bridge is the only connection
// (one internally disjoint path) or some cut node lies on every simple path.
#[test]
fn cut_nodes_dominate_cross_block_paths() {
    fn all_simple_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![s];
        let mut on_path = vec![false; g.node_count()];
        on_path[s] = true;
        fn rec(
            g: &Graph,
            t: usize,
            path: &mut Vec<usize>,
            on_path: &mut Vec<bool>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let last = *path.last().expect("nonempty");
            if last == t {
                out.push(path.clone());
                return;
            }
            for &next in g.neighbors(last) {
                if !on_path[next] {
                    on_path[next] = true;
                    path.push(next);
                    rec(g, t, path, on_path, out);
                    path.pop();
                    on_path[next] = false;
                }
            }
        }
        rec(g, t, &mut path, &mut on_path, &mut out);
        out
    }

    let mut checked_pairs = 0;
    for seed in 0..40u64 {
        let n = 5 + (seed as usize) % 4;
        let g = generators::random_gnp(n, 0.35, seed);
        let d = biconnected_decomposition(&g);
        for u in 0..n {
            for v in u + 1..n {
                if d.component_of[u] != d.component_of[v] {
                    continue;
                }
                let shared_big_block = d
                    .block_of_pair(u, v)
                    .is_some_and(|bi| d.blocks[bi].len() >= 3);
                if shared_big_block {
                    continue;
                }
                checked_pairs += 1;
                if g.has_edge(u, v) {
                    // Bridge edge: the only internally disjoint connection.
                    assert_eq!(max_internally_disjoint_paths(&g, u, v), 1, "seed {seed}");
                    continue;
                }
                let paths = all_simple_paths(&g, u, v);
                assert!(!paths.is_empty());
                let dominating = d
                    .cut_nodes
                    .iter()
                    .any(|&c| c != u && c != v && paths.iter().all(|p| p.contains(&c)));
                assert!(
                    dominating,
                    "seed {seed} pair ({u},{v}): no cut node on every path"
                );
            }
        }
    }
    assert!(
        checked_pairs > 50,
        "exercised {checked_pairs} cross-block pairs"
    );
}

// Counting soundness on a fixture family: graphs with different triangle
// counts must be separated by both pair engines whenever the dense engine
// separates them (and the engines always agree).
#[test]
fn counting_soundness_triangles() {
    let pattern = cosparse::oracle::Pattern::named(cosparse::oracle::PatternName::Cycle3);
    let graphs: Vec<Graph> = (0..12).map(|s| generators::random_gnp(6, 0.5, s)).collect();
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            let ci = cosparse::oracle::count_occurrences(&graphs[i], &pattern).total;
            let cj = cosparse::oracle::count_occurrences(&graphs[j], &pattern).total;
            let dense = distinguishes(&graphs[i], &graphs[j], Engine::Fwl2Dense);
            let cosp = distinguishes(&graphs[i], &graphs[j], Engine::Fwl2Cosp);
            assert_eq!(dense, cosp, "engines disagreed on pair ({i},{j})");
            if ci != cj && dense {
                assert!(cosp);
            }
        }
    }
}

#[test]
fn disconnected_unions_separate_by_component_structure() {
    // Exercises the empty cross-component neighborhoods: one triangle vs two
    // vs triangle-plus-edge.
    let one = generators::complete(3);
    let two = generators::disjoint_union(&[generators::complete(3), generators::complete(3)]);
    let mixed = generators::disjoint_union(&[generators::complete(3), generators::complete(2)]);
    for engine in [Engine::Fwl2Dense, Engine::Fwl2Cosp] {
        assert!(distinguishes(&one, &two, engine));
        assert!(distinguishes(&one, &mixed, engine));
        assert!(distinguishes(&two, &mixed, engine));
    }
    assert_eq!(component_count(&two), 2);
}

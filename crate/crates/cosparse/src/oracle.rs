//! Brute-force ground truth: substructure counts, internally disjoint paths
//! (node version of Menger via node-split max-flow), and exact isomorphism
//! on small graphs.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("pattern has {0} nodes; enumeration is limited to 8")]
    PatternTooLarge(usize),
    #[error("graphs with {0} nodes exceed the exact-isomorphism limit of 10; use canonical labels instead")]
    TooLargeForIsomorphism(usize),
}

/// Named query patterns mirroring the usual small-substructure benchmarks.
/// The benchmark lineage never pins exact definitions for the path and
/// triangle-rectangle rows, so these defaults are overridable via `custom`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PatternName {
    Cycle3,
    Cycle4,
    Cycle5,
    Cycle6,
    /// Simple path with 4 edges (5 nodes).
    Path4,
    /// Triangle plus one pendant edge (4 nodes, 4 edges).
    TailedTriangle,
    /// 4-cycle plus one chord (4 nodes, 5 edges).
    ChordalCycle,
    /// Triangle and 4-cycle sharing exactly one edge (5 nodes, 6 edges).
    TriangleRectangle,
}

pub const ALL_PATTERNS: [PatternName; 8] = [
    PatternName::Cycle3,
    PatternName::Cycle4,
    PatternName::Cycle5,
    PatternName::Cycle6,
    PatternName::Path4,
    PatternName::TailedTriangle,
    PatternName::ChordalCycle,
    PatternName::TriangleRectangle,
];

impl PatternName {
    pub fn as_str(&self) -> &'static str {
        match self {
            PatternName::Cycle3 => "cycle3",
            PatternName::Cycle4 => "cycle4",
            PatternName::Cycle5 => "cycle5",
            PatternName::Cycle6 => "cycle6",
            PatternName::Path4 => "path4",
            PatternName::TailedTriangle => "tailed-triangle",
            PatternName::ChordalCycle => "chordal-cycle",
            PatternName::TriangleRectangle => "triangle-rectangle",
        }
    }
}

impl std::str::FromStr for PatternName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_PATTERNS
            .iter()
            .find(|p| p.as_str() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<_> = ALL_PATTERNS.iter().map(|p| p.as_str()).collect();
                format!("unknown pattern {s:?} (one of {})", names.join("|"))
            })
    }
}

#[derive(Clone, Debug)]
pub struct Pattern {
    pub name: String,
    pub graph: Graph,
    pub automorphism_count: usize,
}

impl Pattern {
    pub fn named(name: PatternName) -> Pattern {
        use crate::graph::generators::{cycle, path};
        let graph = match name {
            PatternName::Cycle3 => cycle(3),
            PatternName::Cycle4 => cycle(4),
            PatternName::Cycle5 => cycle(5),
            PatternName::Cycle6 => cycle(6),
            PatternName::Path4 => path(5),
            PatternName::TailedTriangle => Graph::new(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap(),
            PatternName::ChordalCycle => {
                Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap()
            }
            PatternName::TriangleRectangle => {
                Graph::new(5, [(0, 1), (0, 2), (1, 2), (1, 3), (3, 4), (4, 0)]).unwrap()
            }
        };
        Pattern::custom(name.as_str(), graph).expect("stock patterns are small")
    }

    pub fn custom(name: &str, graph: Graph) -> Result<Pattern, OracleError> {
        if graph.node_count() > 8 {
            return Err(OracleError::PatternTooLarge(graph.node_count()));
        }
        let automorphism_count = enumerate_automorphisms(&graph).len();
        Ok(Pattern {
            name: name.to_string(),
            graph,
            automorphism_count,
        })
    }
}

/// All adjacency-preserving bijections of `g` onto itself, by backtracking.
pub fn enumerate_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    assert!(n <= 10, "automorphism enumeration is limited to n <= 10");
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    backtrack_bijections(g, g, &mut map, &mut used, 0, &mut out);
    out
}

fn backtrack_bijections(
    a: &Graph,
    b: &Graph,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    next: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let n = a.node_count();
    if next == n {
        out.push(map.clone());
        return;
    }
    'candidates: for cand in 0..n {
        if used[cand] || a.degree(next) != b.degree(cand) {
            continue;
        }
        for (prev, &img) in map.iter().enumerate().take(next) {
            if a.has_edge(next, prev) != b.has_edge(cand, img) {
                continue 'candidates;
            }
        }
        map[next] = cand;
        used[cand] = true;
        backtrack_bijections(a, b, map, used, next + 1, out);
        used[cand] = false;
        map[next] = usize::MAX;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OccurrenceCounts {
    /// Number of subgraphs of the host isomorphic to the pattern.
    pub total: u64,
    /// Per node: occurrences whose node set contains it.
    pub per_node: Vec<u64>,
}

/// Subgraph occurrence counting: injective homomorphisms divided by the
/// pattern's automorphism count. `induced` additionally requires non-edges
/// to map to non-edges (the sensitivity-check mode).
pub fn count_occurrences(g: &Graph, p: &Pattern) -> OccurrenceCounts {
    count_occurrences_mode(g, p, false)
}

pub fn count_occurrences_induced(g: &Graph, p: &Pattern) -> OccurrenceCounts {
    count_occurrences_mode(g, p, true)
}

fn count_occurrences_mode(g: &Graph, p: &Pattern, induced: bool) -> OccurrenceCounts {
    let n = g.node_count();
    let k = p.graph.node_count();
    if k > n || k == 0 {
        return OccurrenceCounts {
            total: 0,
            per_node: vec![0; n],
        };
    }
    // Map pattern nodes in a connectivity-friendly order for pruning.
    let order = pattern_order(&p.graph);
    let mut homs: u64 = 0;
    let mut node_homs = vec![0u64; n];
    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; n];
    count_homs(
        g,
        &p.graph,
        &order,
        0,
        &mut map,
        &mut used,
        induced,
        &mut homs,
        &mut node_homs,
    );
    let aut = p.automorphism_count as u64;
    debug_assert_eq!(homs % aut, 0, "hom count divisible by automorphisms");
    OccurrenceCounts {
        total: homs / aut,
        per_node: node_homs.iter().map(|&h| h / aut).collect(),
    }
}

fn pattern_order(p: &Graph) -> Vec<usize> {
    let k = p.node_count();
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    while order.len() < k {
        // Next node with most already-placed neighbors; ties to higher degree.
        let pick = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let anchored = p.neighbors(v).iter().filter(|&&u| placed[u]).count();
                (anchored, p.degree(v))
            })
            .expect("node remains");
        placed[pick] = true;
        order.push(pick);
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn count_homs(
    g: &Graph,
    p: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    induced: bool,
    homs: &mut u64,
    node_homs: &mut [u64],
) {
    if depth == order.len() {
        *homs += 1;
        for &img in map.iter() {
            node_homs[img] += 1;
        }
        return;
    }
    let pv = order[depth];
    'candidates: for cand in 0..g.node_count() {
        if used[cand] || g.degree(cand) < p.degree(pv) {
            continue;
        }
        for &pu in order[..depth].iter() {
            let adj_p = p.has_edge(pv, pu);
            let adj_g = g.has_edge(cand, map[pu]);
            if adj_p && !adj_g {
                continue 'candidates;
            }
            if induced && !adj_p && adj_g {
                continue 'candidates;
            }
        }
        map[pv] = cand;
        used[cand] = true;
        count_homs(g, p, order, depth + 1, map, used, induced, homs, node_homs);
        used[cand] = false;
        map[pv] = usize::MAX;
    }
}

/// Maximum number of pairwise internally disjoint u-v paths, computed exactly
/// by node-split max-flow (each inner node gets capacity 1). An edge between
/// u and v counts as one path.
pub fn max_internally_disjoint_paths(g: &Graph, u: usize, v: usize) -> usize {
    assert_ne!(u, v, "endpoints must differ");
    let n = g.node_count();
    // Node x splits into x_in = 2x, x_out = 2x+1.
    let nodes = 2 * n;
    let mut cap = vec![std::collections::HashMap::<usize, i64>::new(); nodes];
    let add = |cap: &mut Vec<std::collections::HashMap<usize, i64>>, a: usize, b: usize, c: i64| {
        *cap[a].entry(b).or_insert(0) += c;
        cap[b].entry(a).or_insert(0);
    };
    let inner_cap = |x: usize| if x == u || x == v { i64::MAX / 4 } else { 1 };
    for x in 0..n {
        add(&mut cap, 2 * x, 2 * x + 1, inner_cap(x));
    }
    for &(a, b) in g.edges() {
        add(&mut cap, 2 * a + 1, 2 * b, 1);
        add(&mut cap, 2 * b + 1, 2 * a, 1);
    }
    let source = 2 * u + 1;
    let sink = 2 * v;
    // Edmonds-Karp; flows here are tiny.
    let mut flow = 0i64;
    loop {
        let mut prev = vec![usize::MAX; nodes];
        prev[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for (&y, &c) in &cap[x] {
                if c > 0 && prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut bottleneck = i64::MAX;
        let mut x = sink;
        while x != source {
            let p = prev[x];
            bottleneck = bottleneck.min(cap[p][&x]);
            x = p;
        }
        let mut x = sink;
        while x != source {
            let p = prev[x];
            *cap[p].get_mut(&x).expect("edge exists") -= bottleneck;
            *cap[x].get_mut(&p).expect("reverse edge exists") += bottleneck;
            x = p;
        }
        flow += bottleneck;
    }
    flow as usize
}

/// Exact isomorphism by backtracking over degree-compatible bijections;
/// refuses graphs beyond 10 nodes.
pub fn isomorphic_bruteforce(a: &Graph, b: &Graph) -> Result<bool, OracleError> {
    let n = a.node_count();
    if n > 10 || b.node_count() > 10 {
        return Err(OracleError::TooLargeForIsomorphism(n.max(b.node_count())));
    }
    if n != b.node_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let mut deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return Ok(false);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(find_bijection(a, b, &mut map, &mut used, 0))
}

fn find_bijection(
    a: &Graph,
    b: &Graph,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    next: usize,
) -> bool {
    let n = a.node_count();
    if next == n {
        return true;
    }
    'candidates: for cand in 0..n {
        if used[cand] || a.degree(next) != b.degree(cand) {
            continue;
        }
        for (prev, &img) in map.iter().enumerate().take(next) {
            if a.has_edge(next, prev) != b.has_edge(cand, img) {
                continue 'candidates;
            }
        }
        map[next] = cand;
        used[cand] = true;
        if find_bijection(a, b, map, used, next + 1) {
            return true;
        }
        used[cand] = false;
        map[next] = usize::MAX;
    }
    false
}

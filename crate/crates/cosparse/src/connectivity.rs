//! Connected components, biconnected blocks, cut nodes, and the block-cut
//! tree, with exhaustive brute-force oracles for verification.
//!
//! Bridge edges appear as 2-node blocks so that every edge lies in exactly
//! one block; consumers that only want cyclic structure filter to |B| >= 3.
//! Isolated nodes form singleton components and belong to no block.

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityDecomposition {
    n: usize,
    m: usize,
    /// Component id per node; ids ordered by smallest contained node.
    pub component_of: Vec<usize>,
    /// Node sets per component, each sorted.
    pub components: Vec<Vec<usize>>,
    /// Maximal biconnected blocks (2-node blocks are bridges), each sorted;
    /// blocks ordered by (smallest node, size, lexicographic).
    pub blocks: Vec<Vec<usize>>,
    /// Articulation points, sorted.
    pub cut_nodes: Vec<usize>,
    /// Bipartite block-cut tree edges: (block index, cut node).
    pub block_cut_edges: Vec<(usize, usize)>,
    /// Indices into `blocks` per node, ascending.
    pub node_blocks: Vec<Vec<usize>>,
}

impl ConnectivityDecomposition {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn matches(&self, g: &Graph) -> bool {
        self.n == g.node_count() && self.m == g.edge_count()
    }

    /// The unique block containing both endpoints, if any. Two distinct
    /// blocks share at most one node, so a pair determines its block.
    pub fn block_of_pair(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = (&self.node_blocks[u], &self.node_blocks[v]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Equal => return Some(a[i]),
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
            }
        }
        None
    }

    pub fn is_cut_node(&self, v: usize) -> bool {
        self.cut_nodes.binary_search(&v).is_ok()
    }
}

/// Component labeling; labels are 0..k-1 in order of smallest contained node.
pub fn connected_components(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut queue = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        queue.push(start);
        while let Some(u) = queue.pop() {
            for &v in g.neighbors(u) {
                if label[v] == usize::MAX {
                    label[v] = next;
                    queue.push(v);
                }
            }
        }
        next += 1;
    }
    label
}

pub fn component_count(g: &Graph) -> usize {
    connected_components(g)
        .iter()
        .copied()
        .max()
        .map_or(0, |c| c + 1)
}

/// Exact unweighted shortest-path distances from `source`; `None` when
/// unreachable.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<Option<usize>> {
    assert!(source < g.node_count(), "source out of range");
    let mut dist = vec![None; g.node_count()];
    dist[source] = Some(0);
    let mut frontier = vec![source];
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            for &v in g.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d);
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Biconnected decomposition via an iterative (explicit-stack) lowpoint DFS,
/// so recursion depth never bounds graph size.
pub fn biconnected_decomposition(g: &Graph) -> ConnectivityDecomposition {
    let n = g.node_count();
    let component_of = connected_components(g);
    let comp_count = component_of.iter().copied().max().map_or(0, |c| c + 1);
    let mut components = vec![Vec::new(); comp_count];
    for v in 0..n {
        components[component_of[v]].push(v);
    }

    const UNSET: usize = usize::MAX;
    let mut disc = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![UNSET; n];
    let mut child_idx = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut is_cut = vec![false; n];
    // Scratch marks deduplicate nodes while collecting a block.
    let mut mark = vec![usize::MAX; n];

    for root in 0..n {
        if disc[root] != UNSET {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0usize;
        let mut stack = vec![root];
        while let Some(&u) = stack.last() {
            if child_idx[u] < g.degree(u) {
                let v = g.neighbors(u)[child_idx[u]];
                child_idx[u] += 1;
                if disc[v] == UNSET {
                    // Tree edge.
                    parent[v] = u;
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    if u == root {
                        root_children += 1;
                    }
                    edge_stack.push((u, v));
                    stack.push(v);
                } else if v != parent[u] && disc[v] < disc[u] {
                    // Back edge, recorded once.
                    edge_stack.push((u, v));
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&p) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        // p separates the subtree at u: close a block.
                        if p != root || root_children > 1 {
                            is_cut[p] = true;
                        }
                        let stamp = blocks.len();
                        let mut nodes = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            for w in [e.0, e.1] {
                                if mark[w] != stamp {
                                    mark[w] = stamp;
                                    nodes.push(w);
                                }
                            }
                            if e == (p, u) {
                                break;
                            }
                        }
                        nodes.sort_unstable();
                        blocks.push(nodes);
                    }
                }
            }
        }
    }

    blocks.sort_by(|a, b| (a[0], a.len()).cmp(&(b[0], b.len())).then_with(|| a.cmp(b)));
    let cut_nodes: Vec<usize> = (0..n).filter(|&v| is_cut[v]).collect();
    let mut node_blocks = vec![Vec::new(); n];
    let mut block_cut_edges = Vec::new();
    for (bi, block) in blocks.iter().enumerate() {
        for &v in block {
            node_blocks[v].push(bi);
            if is_cut[v] {
                block_cut_edges.push((bi, v));
            }
        }
    }

    ConnectivityDecomposition {
        n,
        m: g.edge_count(),
        component_of,
        components,
        blocks,
        cut_nodes,
        block_cut_edges,
        node_blocks,
    }
}

// ---------------------------------------------------------------------------
// Brute-force oracles (bitmask subgraphs; desk scale).
// ---------------------------------------------------------------------------

fn connected_mask(rows: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let start = 1u64 << mask.trailing_zeros();
    let mut reach = start;
    loop {
        let mut next = reach;
        let mut rest = reach;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= rows[v] & mask;
        }
        if next == reach {
            break;
        }
        reach = next;
    }
    reach == mask
}

/// Induced subgraph on `mask` is connected and, for three or more nodes,
/// stays connected after deleting any single node. Two nodes qualify iff
/// they are adjacent.
fn biconnected_mask(rows: &[u64], mask: u64) -> bool {
    let k = mask.count_ones();
    if k < 2 {
        return false;
    }
    if k == 2 {
        let a = mask.trailing_zeros() as usize;
        let b = (63 - mask.leading_zeros()) as usize;
        return rows[a] >> b & 1 == 1;
    }
    if !connected_mask(rows, mask) {
        return false;
    }
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        if !connected_mask(rows, mask & !(1u64 << v)) {
            return false;
        }
    }
    true
}

/// Independent oracle for block membership: the induced subgraph must be
/// connected, biconnected for |nodes| >= 3, and not properly contained in a
/// larger such set (checked by exhausting all supersets).
pub fn verify_block_bruteforce(g: &Graph, nodes: &[usize]) -> bool {
    let n = g.node_count();
    assert!(n <= 24, "brute-force oracle is limited to n <= 24");
    assert!(nodes.len() >= 2, "blocks have at least two nodes");
    let rows = g.adjacency_bitrows().expect("n <= 24");
    let mut mask = 0u64;
    for &v in nodes {
        assert!(v < n, "node out of range");
        mask |= 1 << v;
    }
    if (mask.count_ones() as usize) != nodes.len() {
        return false; // duplicate nodes
    }
    if !biconnected_mask(&rows, mask) {
        return false;
    }
    let all = (1u64 << n) - 1;
    let rest = all & !mask;
    let mut s = rest;
    while s != 0 {
        if biconnected_mask(&rows, mask | s) {
            return false;
        }
        s = (s - 1) & rest;
    }
    true
}

/// All maximal biconnected node sets by exhaustive subset enumeration; the
/// ground truth `biconnected_decomposition` must reproduce exactly.
pub fn maximal_biconnected_sets_bruteforce(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    assert!(n <= 20, "exhaustive enumeration is limited to n <= 20");
    if n == 0 {
        return Vec::new();
    }
    let rows = g.adjacency_bitrows().expect("n <= 20");
    let all = (1u64 << n) - 1;
    let mut valid: Vec<u64> = Vec::new();
    for mask in 1..=all {
        if mask.count_ones() >= 2 && biconnected_mask(&rows, mask) {
            valid.push(mask);
        }
    }
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    'outer: for &m in &valid {
        for &other in &valid {
            if other != m && other & m == m {
                continue 'outer;
            }
        }
        maximal.push((0..n).filter(|&v| m >> v & 1 == 1).collect());
    }
    maximal.sort_by(|a, b| (a[0], a.len()).cmp(&(b[0], b.len())).then_with(|| a.cmp(b)));
    maximal
}

/// Cut nodes by definition: deleting the node increases the component count.
pub fn cut_nodes_bruteforce(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let base = component_count(g);
    let mut cuts = Vec::new();
    for v in 0..n {
        let reduced = Graph::new(
            n,
            g.edges().iter().copied().filter(|&(a, b)| a != v && b != v),
        )
        .expect("edge subset is valid");
        // The deleted node itself becomes isolated; discount it, and discount
        // the component it previously formed if it was already isolated.
        let after = component_count(&reduced) - 1;
        let before = base - usize::from(g.degree(v) == 0);
        if after > before {
            cuts.push(v);
        }
    }
    cuts
}

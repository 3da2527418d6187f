//! Simple undirected graphs with dense 0-based node indices, plus parsing,
//! generation, and the random-walk matrix view.
//!
//! Graphs are immutable after construction; decompositions and plans hold
//! read-only references. External IDs must be mapped to 0..n during ingestion.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("node index {index} out of range for {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
}

impl Graph {
    /// Builds a graph from unordered edges; duplicates are merged.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::IndexOutOfRange { index: a, n });
            }
            if b >= n {
                return Err(GraphError::IndexOutOfRange { index: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        canon.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: canon,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, std::iter::empty()).expect("no edges to validate")
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonicalized edge list, sorted, with u < v.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Per-node adjacency bitmasks; only available for n <= 64.
    pub fn adjacency_bitrows(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        let mut rows = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Some(rows)
    }

    /// Image of the graph under `perm`: node `u` becomes `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("permutation preserves validity")
    }

    /// Canonical edge-list text; `parse_edge_list` round-trips it.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Optional discrete node labels; length must equal the node count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeLabeling {
    labels: Vec<u64>,
}

impl NodeLabeling {
    pub fn new(g: &Graph, labels: Vec<u64>) -> Result<Self, GraphError> {
        if labels.len() != g.node_count() {
            return Err(GraphError::IndexOutOfRange {
                index: labels.len(),
                n: g.node_count(),
            });
        }
        Ok(NodeLabeling { labels })
    }

    pub fn label(&self, u: usize) -> u64 {
        self.labels[u]
    }
}

/// Optional discrete edge labels, stored symmetrically.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeLabeling {
    map: BTreeMap<(usize, usize), u64>,
}

impl EdgeLabeling {
    pub fn new(entries: impl IntoIterator<Item = ((usize, usize), u64)>) -> Self {
        let mut map = BTreeMap::new();
        for ((a, b), l) in entries {
            map.insert((a.min(b), a.max(b)), l);
        }
        EdgeLabeling { map }
    }

    pub fn label(&self, u: usize, v: usize) -> Option<u64> {
        self.map.get(&(u.min(v), u.max(v))).copied()
    }
}

// ---------------------------------------------------------------------------
// Edge-list format: first line "n m", then m lines "u v"; '#' comments and
// blank lines are ignored. Indices are 0-based.
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected {expected}, found {found:?}")]
    Malformed {
        line: usize,
        expected: &'static str,
        found: String,
    },
    #[error("line {line}: node index {index} out of range for {n} nodes")]
    IndexOutOfRange { line: usize, index: usize, n: usize },
    #[error("line {line}: self-loop at node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let parse_num = |s: Option<&str>, expected| -> Result<usize, ParseError> {
            let tok = s.ok_or(ParseError::Malformed {
                line: line_no,
                expected,
                found: line.to_string(),
            })?;
            tok.parse().map_err(|_| ParseError::Malformed {
                line: line_no,
                expected,
                found: tok.to_string(),
            })
        };
        if header.is_none() {
            let n = parse_num(fields.next(), "node count")?;
            let m = parse_num(fields.next(), "edge count")?;
            if fields.next().is_some() {
                return Err(ParseError::Malformed {
                    line: line_no,
                    expected: "header \"n m\"",
                    found: line.to_string(),
                });
            }
            header = Some((n, m));
        } else {
            let u = parse_num(fields.next(), "edge endpoint")?;
            let v = parse_num(fields.next(), "edge endpoint")?;
            if fields.next().is_some() {
                return Err(ParseError::Malformed {
                    line: line_no,
                    expected: "edge \"u v\"",
                    found: line.to_string(),
                });
            }
            edges.push((u, v));
            edge_lines.push(line_no);
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            expected: m,
            found: edges.len(),
        });
    }
    for (&(u, v), &line) in edges.iter().zip(&edge_lines) {
        if u >= n {
            return Err(ParseError::IndexOutOfRange { line, index: u, n });
        }
        if v >= n {
            return Err(ParseError::IndexOutOfRange { line, index: v, n });
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, node: u });
        }
    }
    Ok(Graph::new(n, edges).expect("validated above"))
}

// ---------------------------------------------------------------------------
// graph6 (short form, n <= 62): byte n+63, then the upper triangle of the
// adjacency matrix column by column, 6 bits per byte (MSB first), each +63.
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 input")]
    Empty,
    #[error("long-form graph6 (n > 62) is not supported")]
    LongForm,
    #[error("invalid graph6 byte {byte:#x} at position {pos}")]
    InvalidByte { byte: u8, pos: usize },
    #[error("truncated bit payload: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data after {expected} payload bytes")]
    TrailingData { expected: usize },
    #[error("nonzero padding bits")]
    NonzeroPadding,
    #[error("graph too large for graph6 short form: {0} > 62 nodes")]
    TooLarge(usize),
}

pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let mut s = line.trim();
    if let Some(rest) = s.strip_prefix(">>graph6<<") {
        s = rest;
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if bytes[0] == b'~' {
        return Err(Graph6Error::LongForm);
    }
    if !(63..=126).contains(&bytes[0]) {
        return Err(Graph6Error::InvalidByte {
            byte: bytes[0],
            pos: 0,
        });
    }
    let n = (bytes[0] - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let payload = &bytes[1..];
    if payload.len() < nbytes {
        return Err(Graph6Error::Truncated {
            expected: nbytes,
            found: payload.len(),
        });
    }
    if payload.len() > nbytes {
        return Err(Graph6Error::TrailingData { expected: nbytes });
    }
    let mut bits = Vec::with_capacity(nbytes * 6);
    for (i, &b) in payload.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte {
                byte: b,
                pos: i + 1,
            });
        }
        let v = b - 63;
        for k in (0..6).rev() {
            bits.push((v >> k) & 1 == 1);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(Graph6Error::NonzeroPadding);
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[idx] {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Ok(Graph::new(n, edges).expect("bit payload yields valid edges"))
}

pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.node_count();
    if n > 62 {
        return Err(Graph6Error::TooLarge(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let mut bits = vec![false; nbits.div_ceil(6) * 6];
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            bits[idx] = g.has_edge(u, v);
            idx += 1;
        }
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                v |= 1 << (5 - k);
            }
        }
        out.push((v + 63) as char);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Glued-block generation: random biconnected blocks joined at single shared
// nodes following a prescribed tree, so the biconnected decomposition of the
// result is exactly the request.
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GluedError {
    #[error("no blocks requested")]
    NoBlocks,
    #[error("block {index} has size {size}; minimum is 2")]
    BlockTooSmall { index: usize, size: usize },
    #[error("attachment references block {0}, but only {1} blocks exist")]
    BadBlockIndex(usize, usize),
    #[error("attachment is not a tree over the blocks")]
    NotATree,
}

/// Builds one random biconnected graph per requested size (cycle plus random
/// chords) and identifies single nodes along the attachment tree.
/// Deterministic for a fixed (blocks, attachment, seed).
pub fn generate_glued(
    blocks: &[usize],
    attachment: &[(usize, usize)],
    seed: u64,
) -> Result<Graph, GluedError> {
    let b = blocks.len();
    if b == 0 {
        return Err(GluedError::NoBlocks);
    }
    for (index, &size) in blocks.iter().enumerate() {
        if size < 2 {
            return Err(GluedError::BlockTooSmall { index, size });
        }
    }
    if attachment.len() != b - 1 {
        return Err(GluedError::NotATree);
    }
    let mut tree_adj = vec![Vec::new(); b];
    for &(i, j) in attachment {
        if i >= b {
            return Err(GluedError::BadBlockIndex(i, b));
        }
        if j >= b {
            return Err(GluedError::BadBlockIndex(j, b));
        }
        if i == j {
            return Err(GluedError::NotATree);
        }
        tree_adj[i].push(j);
        tree_adj[j].push(i);
    }
    // b-1 edges and full reachability from block 0 make it a tree.
    let mut seen = vec![false; b];
    let mut queue = vec![0usize];
    seen[0] = true;
    let mut order = Vec::new(); // (block, parent-block or self for the root)
    order.push((0usize, 0usize));
    while let Some(i) = queue.pop() {
        let mut next: Vec<usize> = tree_adj[i].iter().copied().filter(|&j| !seen[j]).collect();
        next.sort_unstable();
        for j in next.into_iter().rev() {
            seen[j] = true;
            order.push((j, i));
            queue.push(j);
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(GluedError::NotATree);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut node_ids: Vec<Vec<usize>> = vec![Vec::new(); b];
    let mut next_id = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &(block, parent) in &order {
        let size = blocks[block];
        let mut ids = Vec::with_capacity(size);
        if block != parent || block != order[0].0 {
            // Shared cut node: a random node of the parent block stands in
            // for a random position of this block.
            let shared = node_ids[parent][rng.gen_range(0..node_ids[parent].len())];
            let slot = rng.gen_range(0..size);
            for pos in 0..size {
                if pos == slot {
                    ids.push(shared);
                } else {
                    ids.push(next_id);
                    next_id += 1;
                }
            }
        } else {
            for _ in 0..size {
                ids.push(next_id);
                next_id += 1;
            }
        }
        // Cycle spine keeps the block biconnected for size >= 3; a single
        // edge is the size-2 (bridge) block.
        if size == 2 {
            edges.push((ids[0], ids[1]));
        } else {
            for pos in 0..size {
                edges.push((ids[pos], ids[(pos + 1) % size]));
            }
            for a in 0..size {
                for c in a + 2..size {
                    if a == 0 && c == size - 1 {
                        continue; // cycle edge
                    }
                    if rng.gen_bool(0.3) {
                        edges.push((ids[a], ids[c]));
                    }
                }
            }
        }
        node_ids[block] = ids;
    }
    Ok(Graph::new(next_id, edges).expect("construction yields valid edges"))
}

/// Row-stochastic random-walk matrix; rows of isolated nodes are all zero so
/// powers stay well-defined and unreachability encodes as 0.
pub fn random_walk_matrix<R: Real>(g: &Graph) -> Matrix<R> {
    let n = g.node_count();
    let mut m = Matrix::zeros(n, n);
    for u in 0..n {
        let deg = g.degree(u);
        if deg == 0 {
            continue;
        }
        let w = R::one() / R::of_usize(deg);
        for &v in g.neighbors(u) {
            m[(u, v)] = w;
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Stock constructions used by corpora, demos, and tests.
// ---------------------------------------------------------------------------

pub mod generators {
    use super::*;

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 nodes");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid")
    }

    /// Disjoint union with nodes of later parts shifted upward.
    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let n: usize = parts.iter().map(Graph::node_count).sum();
        let mut edges = Vec::new();
        let mut offset = 0;
        for g in parts {
            edges.extend(g.edges().iter().map(|&(u, v)| (u + offset, v + offset)));
            offset += g.node_count();
        }
        Graph::new(n, edges).expect("valid")
    }

    /// Kneser-style Petersen graph: 2-subsets of {0..4}, adjacent iff disjoint.
    pub fn petersen() -> Graph {
        let mut subsets = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                subsets.push((a, b));
            }
        }
        let mut edges = Vec::new();
        for (i, &(a, b)) in subsets.iter().enumerate() {
            for (j, &(c, d)) in subsets.iter().enumerate().skip(i + 1) {
                if a != c && a != d && b != c && b != d {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(10, edges).expect("valid")
    }

    /// 4x4 rook's graph: cells of a 4x4 grid, adjacent iff same row or column.
    pub fn rook_4x4() -> Graph {
        let idx = |r: usize, c: usize| r * 4 + c;
        let mut edges = Vec::new();
        for r in 0..4 {
            for c in 0..4 {
                for c2 in c + 1..4 {
                    edges.push((idx(r, c), idx(r, c2)));
                }
                for r2 in r + 1..4 {
                    edges.push((idx(r, c), idx(r2, c)));
                }
            }
        }
        Graph::new(16, edges).expect("valid")
    }

    /// Shrikhande graph: Cayley graph on Z4 x Z4 with connection set
    /// {±(1,0), ±(0,1), ±(1,1)}; same strongly-regular parameters as rook_4x4.
    pub fn shrikhande() -> Graph {
        let idx = |a: usize, b: usize| (a % 4) * 4 + (b % 4);
        let mut edges = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                let u = idx(a, b);
                for (da, db) in [(1, 0), (0, 1), (1, 1)] {
                    let v = idx(a + da, b + db);
                    edges.push((u, v));
                }
            }
        }
        Graph::new(16, edges).expect("valid")
    }

    /// Uniform random graph with exactly `m` edges (or fewer when duplicates
    /// collide at tiny n), sampled directly; linear in m, not n^2.
    pub fn random_sparse(n: usize, m: usize, seed: u64) -> Graph {
        assert!(n >= 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = std::collections::HashSet::new();
        let cap = m.min(n * (n - 1) / 2);
        let mut attempts = 0usize;
        while edges.len() < cap && attempts < 20 * m + 100 {
            attempts += 1;
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.insert((u.min(v), u.max(v)));
            }
        }
        Graph::new(n, edges).expect("sampled edges are valid")
    }

    /// Erdos-Renyi G(n, p), seeded.
    pub fn random_gnp(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, edges).expect("valid")
    }

    /// Uniformly random permutation of 0..n, seeded.
    pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        perm.shuffle(&mut rng);
        perm
    }
}

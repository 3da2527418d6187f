//! Interaction plans: the materialized ordered pairs to update and, per pair,
//! the permitted message sources.
//!
//! Three flavors. `dense` keeps every ordered pair over V x V and aggregates
//! over every intermediate node. `cosp` materializes only same-component
//! pairs and keeps 3-node entries only inside biconnected blocks of at least
//! three nodes, plus the 2-node families: self-pair propagation into every
//! off-diagonal pair, back-propagation from off-diagonal pairs into diagonal
//! pairs, and a diagonal self entry so no neighborhood is empty. `cosp-dist`
//! additionally drops pairs and 3-node entries beyond a shortest-path bound.
//!
//! Entries are ordered by intermediate node ascending, then tag, so rebuilt
//! plans are bit-identical.

use serde::Serialize;
use thiserror::Error;

use crate::connectivity::{bfs_distances, ConnectivityDecomposition};
use crate::graph::Graph;

pub const TAG_COUNT: usize = 5;

/// Structural role of one neighbor entry ((u,t),(t,v)) for target (u,v).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum NeighborTag {
    /// u, t, v pairwise distinct.
    Triple,
    /// ((u,u),(u,v)) on an off-diagonal target.
    SelfLeft,
    /// ((u,v),(v,v)) on an off-diagonal target.
    SelfRight,
    /// ((v,u),(u,v)) on a diagonal target (v,v), u != v.
    Back,
    /// ((u,u),(u,u)) on a diagonal target.
    DiagSelf,
}

impl NeighborTag {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            NeighborTag::Triple => "TRIPLE",
            NeighborTag::SelfLeft => "SELF_LEFT",
            NeighborTag::SelfRight => "SELF_RIGHT",
            NeighborTag::Back => "BACK",
            NeighborTag::DiagSelf => "DIAG_SELF",
        }
    }
}

/// One message source for a target pair: positions of (u,t) and (t,v) in the
/// plan's pair order, the intermediate node t, and the structural tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NeighborEntry {
    pub via: u32,
    pub left: u32,
    pub right: u32,
    pub tag: NeighborTag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PlanFlavor {
    Dense,
    Cosparsified,
    DistanceBounded { max_dist: usize },
}

impl PlanFlavor {
    pub fn name(&self) -> &'static str {
        match self {
            PlanFlavor::Dense => "dense",
            PlanFlavor::Cosparsified => "cosp",
            PlanFlavor::DistanceBounded { .. } => "cosp-dist",
        }
    }
}

/// Exact integer accounting for a plan. `two_node_count` covers all non-triple
/// entries (SELF_LEFT, SELF_RIGHT, BACK, DIAG_SELF).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PlanStats {
    pub pair_count: u64,
    pub triple_count: u64,
    pub two_node_count: u64,
    pub entry_count: u64,
    pub per_tag: [u64; TAG_COUNT],
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanError {
    #[error("decomposition does not match graph ({dn} nodes/{dm} edges vs {gn} nodes/{gm} edges)")]
    Mismatch {
        dn: usize,
        dm: usize,
        gn: usize,
        gm: usize,
    },
    #[error("max_dist must be at least 1")]
    BadMaxDist,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionPlan {
    flavor: PlanFlavor,
    n: usize,
    pairs: Vec<(u32, u32)>,
    /// Dense (u*n+v) -> position lookup; u32::MAX when unmaterialized.
    pair_pos: Vec<u32>,
    entries: Vec<NeighborEntry>,
    /// Per-pair slice bounds into `entries`, length pairs+1.
    offsets: Vec<u32>,
    stats: PlanStats,
}

impl InteractionPlan {
    pub fn flavor(&self) -> PlanFlavor {
        self.flavor
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn pair_position(&self, u: usize, v: usize) -> Option<usize> {
        let p = self.pair_pos[u * self.n + v];
        (p != u32::MAX).then_some(p as usize)
    }

    pub fn neighbors_of(&self, pos: usize) -> &[NeighborEntry] {
        &self.entries[self.offsets[pos] as usize..self.offsets[pos + 1] as usize]
    }

    /// Counts recorded during construction; `plan_stats` recounts them.
    pub fn stats(&self) -> &PlanStats {
        &self.stats
    }

    /// True when pairs, neighbor lists, and entry tags coincide; flavors may
    /// differ (a vacuous distance bound reproduces the co-sparsified plan).
    pub fn same_structure(&self, other: &InteractionPlan) -> bool {
        self.n == other.n
            && self.pairs == other.pairs
            && self.offsets == other.offsets
            && self.entries == other.entries
    }
}

struct Builder {
    n: usize,
    pairs: Vec<(u32, u32)>,
    pair_pos: Vec<u32>,
    entries: Vec<NeighborEntry>,
    offsets: Vec<u32>,
    stats: PlanStats,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            n,
            pairs: Vec::new(),
            pair_pos: vec![u32::MAX; n * n],
            entries: Vec::new(),
            offsets: vec![0],
            stats: PlanStats::default(),
        }
    }

    fn materialize(&mut self, u: usize, v: usize) {
        self.pair_pos[u * self.n + v] = self.pairs.len() as u32;
        self.pairs.push((u as u32, v as u32));
    }

    fn pos(&self, u: usize, v: usize) -> u32 {
        let p = self.pair_pos[u * self.n + v];
        debug_assert_ne!(p, u32::MAX, "neighbor references a missing pair");
        p
    }

    fn push_entry(
        &mut self,
        via: usize,
        left: (usize, usize),
        right: (usize, usize),
        tag: NeighborTag,
    ) {
        self.entries.push(NeighborEntry {
            via: via as u32,
            left: self.pos(left.0, left.1),
            right: self.pos(right.0, right.1),
            tag,
        });
        self.stats.per_tag[tag.index()] += 1;
        if tag == NeighborTag::Triple {
            self.stats.triple_count += 1;
        } else {
            self.stats.two_node_count += 1;
        }
    }

    fn close_pair(&mut self) {
        self.offsets.push(self.entries.len() as u32);
    }

    fn finish(mut self, flavor: PlanFlavor) -> InteractionPlan {
        self.stats.pair_count = self.pairs.len() as u64;
        self.stats.entry_count = self.entries.len() as u64;
        InteractionPlan {
            flavor,
            n: self.n,
            pairs: self.pairs,
            pair_pos: self.pair_pos,
            entries: self.entries,
            offsets: self.offsets,
            stats: self.stats,
        }
    }
}

/// Unsparsified baseline: all ordered pairs, every intermediate node.
pub fn dense_plan(g: &Graph) -> InteractionPlan {
    let n = g.node_count();
    let mut b = Builder::new(n);
    for u in 0..n {
        for v in 0..n {
            b.materialize(u, v);
        }
    }
    for u in 0..n {
        for v in 0..n {
            for t in 0..n {
                let tag = if u == v {
                    if t == u {
                        NeighborTag::DiagSelf
                    } else {
                        NeighborTag::Back
                    }
                } else if t == u {
                    NeighborTag::SelfLeft
                } else if t == v {
                    NeighborTag::SelfRight
                } else {
                    NeighborTag::Triple
                };
                b.push_entry(t, (u, t), (t, v), tag);
            }
            b.close_pair();
        }
    }
    b.finish(PlanFlavor::Dense)
}

/// Co-sparsified plan: pairs within connected components, triples within
/// blocks of at least three nodes.
pub fn cosparsify_plan(
    g: &Graph,
    d: &ConnectivityDecomposition,
) -> Result<InteractionPlan, PlanError> {
    build_sparsified(g, d, None)
}

/// Distance-bounded sub-plan of the co-sparsified plan: off-diagonal pairs
/// require dist(u,v) <= max_dist, and triples additionally dist(u,t) and
/// dist(t,v) <= max_dist. Back entries follow pair materialization.
pub fn distance_bounded_plan(
    g: &Graph,
    d: &ConnectivityDecomposition,
    max_dist: usize,
) -> Result<InteractionPlan, PlanError> {
    if max_dist < 1 {
        return Err(PlanError::BadMaxDist);
    }
    build_sparsified(g, d, Some(max_dist))
}

fn build_sparsified(
    g: &Graph,
    d: &ConnectivityDecomposition,
    max_dist: Option<usize>,
) -> Result<InteractionPlan, PlanError> {
    if !d.matches(g) {
        return Err(PlanError::Mismatch {
            dn: d.node_count(),
            dm: d.edge_count(),
            gn: g.node_count(),
            gm: g.edge_count(),
        });
    }
    let n = g.node_count();
    let dist: Option<Vec<Vec<Option<usize>>>> =
        max_dist.map(|_| (0..n).map(|s| bfs_distances(g, s)).collect());
    let within = |u: usize, v: usize| -> bool {
        match (&dist, max_dist) {
            (Some(dist), Some(bound)) => dist[u][v].is_some_and(|x| x <= bound),
            _ => true,
        }
    };

    let mut b = Builder::new(n);
    for u in 0..n {
        for v in 0..n {
            if d.component_of[u] == d.component_of[v] && (u == v || within(u, v)) {
                b.materialize(u, v);
            }
        }
    }
    for pi in 0..b.pairs.len() {
        let (u, v) = (b.pairs[pi].0 as usize, b.pairs[pi].1 as usize);
        if u == v {
            // Diagonal target: one self entry plus back-entries from every
            // materialized off-diagonal pair of the component.
            for &x in &d.components[d.component_of[u]] {
                if x == u {
                    b.push_entry(x, (u, u), (u, u), NeighborTag::DiagSelf);
                } else if b.pair_pos[u * n + x] != u32::MAX {
                    b.push_entry(x, (u, x), (x, u), NeighborTag::Back);
                }
            }
        } else {
            // Triples live inside the unique block containing both endpoints,
            // when it has at least three nodes.
            let block = d
                .block_of_pair(u, v)
                .map(|bi| d.blocks[bi].as_slice())
                .filter(|bl| bl.len() >= 3)
                .unwrap_or(&[]);
            let mut bi = 0;
            for t in 0..n {
                while bi < block.len() && block[bi] < t {
                    bi += 1;
                }
                if t == u {
                    b.push_entry(t, (u, u), (u, v), NeighborTag::SelfLeft);
                } else if t == v {
                    b.push_entry(t, (u, v), (v, v), NeighborTag::SelfRight);
                } else if bi < block.len() && block[bi] == t && within(u, t) && within(t, v) {
                    b.push_entry(t, (u, t), (t, v), NeighborTag::Triple);
                }
            }
        }
        b.close_pair();
    }
    let flavor = match max_dist {
        None => PlanFlavor::Cosparsified,
        Some(max_dist) => PlanFlavor::DistanceBounded { max_dist },
    };
    Ok(b.finish(flavor))
}

/// Recounts every statistic by iterating the materialized lists; construction
/// counters must agree.
pub fn plan_stats(p: &InteractionPlan) -> PlanStats {
    let mut stats = PlanStats {
        pair_count: p.pair_count() as u64,
        ..PlanStats::default()
    };
    for pos in 0..p.pair_count() {
        for e in p.neighbors_of(pos) {
            stats.entry_count += 1;
            stats.per_tag[e.tag.index()] += 1;
            if e.tag == NeighborTag::Triple {
                stats.triple_count += 1;
            } else {
                stats.two_node_count += 1;
            }
        }
    }
    stats
}

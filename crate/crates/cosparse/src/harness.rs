//! Corpus management, equivalence certification, counting probes, and
//! complexity profiling.
//!
//! Exhaustive corpora are generated by node addition over canonical forms:
//! every connected graph on k+1 nodes is a connected graph on k nodes plus
//! one node joined to a nonempty subset (every connected graph has a
//! non-cut vertex), so level-by-level extension with canonical-code dedup
//! enumerates each isomorphism class exactly once.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::connectivity::biconnected_decomposition;
use crate::graph::{generate_glued, generators, parse_edge_list, parse_graph6, Graph};
use crate::kernel::{forward, KernelParams};
use crate::oracle::{count_occurrences, Pattern};
use crate::refine::{engine_signature_with_layers, Engine, GraphSignature};
use crate::report::{
    Contingency, CountingProbeReport, EquivalenceReport, GraphCount, KernelProbeReport,
    KernelProbeRow, ProfileAggregate, ProfileReport, ProfileRow, Violation, REPORT_SCHEMA_VERSION,
};
use crate::rrwp::compute_rrwp;
use crate::sparsify::{cosparsify_plan, dense_plan, NeighborTag};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("exhaustive enumeration beyond 8 nodes is refused (requested {0})")]
    EnumerationTooLarge(usize),
    #[error("io error reading corpus: {0}")]
    Io(#[from] std::io::Error),
    #[error("{path}:{line}: {message}")]
    CorpusParse {
        path: String,
        line: usize,
        message: String,
    },
}

/// Where a corpus member came from; enough to rebuild it exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Enumerated { n: usize, index: usize },
    File { path: String, line: usize },
    Generated { seed: u64, params: String },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Enumerated { n, index } => write!(f, "enumerated(n={n},index={index})"),
            Provenance::File { path, line } => write!(f, "file({path}:{line})"),
            Provenance::Generated { seed, params } => write!(f, "generated(seed={seed},{params})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub graph: Graph,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub name: String,
    entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn new(name: impl Into<String>, entries: Vec<CorpusEntry>) -> Self {
        Corpus {
            name: name.into(),
            entries,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn graph(&self, index: usize) -> &Graph {
        &self.entries[index].graph
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.entries.iter().map(|e| &e.graph)
    }
}

// ---------------------------------------------------------------------------
// Canonical codes for graphs up to 8 nodes: minimum upper-triangle bit code
// over permutations respecting invariant node classes.
// ---------------------------------------------------------------------------

fn bitrows(g: &Graph) -> Vec<u64> {
    g.adjacency_bitrows().expect("enumeration scale")
}

/// Iterated neighbor-class refinement with isomorphism-invariant class ids
/// (ranks of sorted records, never first-occurrence order).
fn invariant_node_classes(rows: &[u64], n: usize) -> Vec<u32> {
    let mut colors: Vec<u32> = {
        let degs: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
        let mut sorted: Vec<u32> = degs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        degs.iter()
            .map(|d| sorted.binary_search(d).expect("present") as u32)
            .collect()
    };
    loop {
        let mut records: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nb: Vec<u32> = (0..n)
                .filter(|&u| rows[v] >> u & 1 == 1)
                .map(|u| colors[u])
                .collect();
            nb.sort_unstable();
            records.push((colors[v], nb));
        }
        let mut sorted = records.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let next: Vec<u32> = records
            .iter()
            .map(|r| sorted.binary_search(r).expect("present") as u32)
            .collect();
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

fn code_of_positions(rows: &[u64], order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for j in 1..n {
        for i in 0..j {
            code = (code << 1) | (rows[order[i]] >> order[j]) & 1;
        }
    }
    code
}

/// Minimum adjacency code over all permutations that keep nodes grouped by
/// invariant class; a sound canonical form regardless of how coarse the
/// classes are.
fn canonical_code(g: &Graph) -> u64 {
    let n = g.node_count();
    assert!(n <= 8, "codes fit 28 bits only up to 8 nodes");
    if n <= 1 {
        return 0;
    }
    let rows = bitrows(g);
    let classes = invariant_node_classes(&rows, n);
    let mut groups: HashMap<u32, Vec<usize>> = HashMap::new();
    for (v, &class) in classes.iter().enumerate() {
        groups.entry(class).or_default().push(v);
    }
    let mut class_ids: Vec<u32> = groups.keys().copied().collect();
    class_ids.sort_unstable();
    let groups: Vec<Vec<usize>> = class_ids.into_iter().map(|c| groups[&c].clone()).collect();

    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut best = u64::MAX;
    permute_groups(&rows, &groups, 0, &mut order, &mut best);
    best
}

fn permute_groups(
    rows: &[u64],
    groups: &[Vec<usize>],
    gi: usize,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if gi == groups.len() {
        let code = code_of_positions(rows, order);
        if code < *best {
            *best = code;
        }
        return;
    }
    let members = &groups[gi];
    let mut used = vec![false; members.len()];
    permute_one_group(rows, groups, gi, members, &mut used, order, best);
}

fn permute_one_group(
    rows: &[u64],
    groups: &[Vec<usize>],
    gi: usize,
    members: &[usize],
    used: &mut Vec<bool>,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if used.iter().all(|&u| u) {
        permute_groups(rows, groups, gi + 1, order, best);
        return;
    }
    for i in 0..members.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        order.push(members[i]);
        permute_one_group(rows, groups, gi, members, used, order, best);
        order.pop();
        used[i] = false;
    }
}

fn decode_code(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    let total_bits = n * n.saturating_sub(1) / 2;
    let mut bit = total_bits;
    for j in 1..n {
        for i in 0..j {
            bit -= 1;
            if code >> bit & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).expect("decoded edges are valid")
}

/// All connected simple graphs on exactly `n` nodes, up to isomorphism,
/// sorted by canonical code. Refuses n > 8.
pub fn enumerate_connected(n: usize) -> Result<Corpus, HarnessError> {
    if n > 8 {
        return Err(HarnessError::EnumerationTooLarge(n));
    }
    if n == 0 {
        return Ok(Corpus::new("enum:0", Vec::new()));
    }
    let mut level: Vec<u64> = vec![0]; // K1
    for k in 2..=n {
        let mut next: HashMap<u64, ()> = HashMap::new();
        for &code in &level {
            let g = decode_code(k - 1, code);
            for mask in 1u32..(1 << (k - 1)) {
                let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
                for v in 0..k - 1 {
                    if mask >> v & 1 == 1 {
                        edges.push((v, k - 1));
                    }
                }
                let candidate = Graph::new(k, edges).expect("extension is valid");
                next.insert(canonical_code(&candidate), ());
            }
        }
        level = next.into_keys().collect();
        level.sort_unstable();
    }
    level.sort_unstable();
    let entries = level
        .iter()
        .enumerate()
        .map(|(index, &code)| CorpusEntry {
            graph: decode_code(n, code),
            provenance: Provenance::Enumerated { n, index },
        })
        .collect();
    Ok(Corpus::new(format!("enum:{n}"), entries))
}

/// All connected graphs with 1..=n nodes, up to isomorphism.
pub fn enumerate_connected_upto(n: usize) -> Result<Corpus, HarnessError> {
    let mut entries = Vec::new();
    for k in 1..=n {
        entries.extend(enumerate_connected(k)?.entries);
    }
    Ok(Corpus::new(format!("enum-upto:{n}"), entries))
}

/// Seeded disjoint unions of 2-3 members of a base corpus.
pub fn union_corpus(base: &Corpus, count: usize, seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..count)
        .map(|_| {
            let parts = rng.gen_range(2..=3usize);
            let indices: Vec<usize> = (0..parts).map(|_| rng.gen_range(0..base.len())).collect();
            let graphs: Vec<Graph> = indices.iter().map(|&i| base.graph(i).clone()).collect();
            CorpusEntry {
                graph: generators::disjoint_union(&graphs),
                provenance: Provenance::Generated {
                    seed,
                    params: format!("union-of:{base}:{indices:?}", base = base.name),
                },
            }
        })
        .collect();
    Corpus::new(format!("unions:{count}:{}", base.name), entries)
}

/// Seeded glued-block graphs: block sizes drawn from 2..=max_block until the
/// node budget runs out, each block attached to a random earlier block.
pub fn glued_corpus(count: usize, max_nodes: usize, max_block: usize, seed: u64) -> Corpus {
    assert!(max_block >= 2 && max_nodes >= 2);
    let entries = (0..count)
        .map(|i| {
            let graph_seed = seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
            let mut rng = ChaCha8Rng::seed_from_u64(graph_seed);
            let first = rng.gen_range(2..=max_block.min(max_nodes));
            let mut blocks = vec![first];
            let mut attachment = Vec::new();
            let mut nodes = first;
            loop {
                let size = rng.gen_range(2..=max_block);
                if nodes + size - 1 > max_nodes {
                    break;
                }
                attachment.push((rng.gen_range(0..blocks.len()), blocks.len()));
                blocks.push(size);
                nodes += size - 1;
            }
            let graph = generate_glued(&blocks, &attachment, graph_seed).expect("valid request");
            CorpusEntry {
                graph,
                provenance: Provenance::Generated {
                    seed: graph_seed,
                    params: format!("glued:blocks={blocks:?}:attachment={attachment:?}"),
                },
            }
        })
        .collect();
    Corpus::new(format!("glued:{count}:{max_nodes}:{max_block}"), entries)
}

/// Seeded G(n, p) graphs with n drawn uniformly from the given range.
pub fn random_corpus(count: usize, n_min: usize, n_max: usize, p: f64, seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..count)
        .map(|_| {
            let n = rng.gen_range(n_min..=n_max);
            let graph_seed: u64 = rng.gen();
            CorpusEntry {
                graph: generators::random_gnp(n, p, graph_seed),
                provenance: Provenance::Generated {
                    seed: graph_seed,
                    params: format!("gnp:n={n}:p={p}"),
                },
            }
        })
        .collect();
    Corpus::new(format!("random:{count}:{n_min}-{n_max}"), entries)
}

/// One graph6 value per line; blank lines ignored.
pub fn corpus_from_graph6_file(path: &Path) -> Result<Corpus, HarnessError> {
    let text = std::fs::read_to_string(path)?;
    let display = path.display().to_string();
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let graph = parse_graph6(line).map_err(|e| HarnessError::CorpusParse {
            path: display.clone(),
            line: idx + 1,
            message: e.to_string(),
        })?;
        entries.push(CorpusEntry {
            graph,
            provenance: Provenance::File {
                path: display.clone(),
                line: idx + 1,
            },
        });
    }
    Ok(Corpus::new(display, entries))
}

/// Every regular file in the directory, sorted by name, parsed as edge-list.
pub fn corpus_from_edgelist_dir(path: &Path) -> Result<Corpus, HarnessError> {
    let mut files: Vec<_> = std::fs::read_dir(path)?
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|e| e.path().is_file())
        .map(|e| e.path())
        .collect();
    files.sort();
    let mut entries = Vec::new();
    for file in files {
        let display = file.display().to_string();
        let text = std::fs::read_to_string(&file)?;
        let graph = parse_edge_list(&text).map_err(|e| HarnessError::CorpusParse {
            path: display.clone(),
            line: 0,
            message: e.to_string(),
        })?;
        entries.push(CorpusEntry {
            graph,
            provenance: Provenance::File {
                path: display,
                line: 0,
            },
        });
    }
    Ok(Corpus::new(path.display().to_string(), entries))
}

/// The demonstration pairs the harness ships: blind to node refinement,
/// the first separated by both pair engines, the second by neither (equal
/// strongly-regular parameters).
pub fn demo_pairs() -> Vec<(String, Graph, Graph)> {
    vec![
        (
            "c6-vs-two-triangles".to_string(),
            generators::cycle(6),
            generators::disjoint_union(&[generators::complete(3), generators::complete(3)]),
        ),
        (
            "rook4x4-vs-shrikhande".to_string(),
            generators::rook_4x4(),
            generators::shrikhande(),
        ),
    ]
}

/// Order-preserving parallel map; `jobs <= 1` stays strictly serial.
pub fn par_map<T, U, F>(items: &[T], jobs: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    if jobs <= 1 {
        items.iter().map(f).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            use rayon::prelude::*;
            items.par_iter().map(&f).collect()
        })
    }
}

fn corpus_signatures(
    c: &Corpus,
    engine: Engine,
    jobs: usize,
    layers: Option<usize>,
) -> Vec<GraphSignature> {
    let graphs: Vec<&Graph> = c.graphs().collect();
    par_map(&graphs, jobs, |g| {
        engine_signature_with_layers(g, engine, layers)
    })
}

/// Runs both engines on every graph and reports any pair separated by exactly
/// one of them. Identical partitions mean an empty violation list.
pub fn certify_equivalence(
    c: &Corpus,
    engine_a: Engine,
    engine_b: Engine,
    jobs: usize,
    layers: Option<usize>,
) -> EquivalenceReport {
    let sig_a = corpus_signatures(c, engine_a, jobs, layers);
    let sig_b = corpus_signatures(c, engine_b, jobs, layers);
    let mut first_a: HashMap<GraphSignature, usize> = HashMap::new();
    let mut first_b: HashMap<GraphSignature, usize> = HashMap::new();
    let mut violations = Vec::new();
    for i in 0..c.len() {
        let ra = *first_a.entry(sig_a[i].clone()).or_insert(i);
        let rb = *first_b.entry(sig_b[i].clone()).or_insert(i);
        if sig_b[ra] != sig_b[i] {
            violations.push(Violation {
                index_a: ra,
                index_b: i,
                separated_by: "b",
            });
        }
        if sig_a[rb] != sig_a[i] {
            violations.push(Violation {
                index_a: rb,
                index_b: i,
                separated_by: "a",
            });
        }
    }
    EquivalenceReport {
        schema_version: REPORT_SCHEMA_VERSION,
        corpus: c.name.clone(),
        engine_a: engine_a.name(),
        engine_b: engine_b.name(),
        graph_count: c.len(),
        class_count_a: first_a.len(),
        class_count_b: first_b.len(),
        violations,
        elapsed_ms: None,
    }
}

/// Oracle counts for one pattern across a corpus and, when an engine is
/// given, the contingency of (separated?) x (counts differ?) over all pairs.
pub fn counting_probe(
    c: &Corpus,
    pattern: &Pattern,
    engine: Option<Engine>,
    jobs: usize,
    layers: Option<usize>,
) -> CountingProbeReport {
    let graphs: Vec<&Graph> = c.graphs().collect();
    let totals = par_map(&graphs, jobs, |g| count_occurrences(g, pattern).total);
    let counts: Vec<GraphCount> = totals
        .iter()
        .enumerate()
        .map(|(index, &total)| GraphCount {
            index,
            provenance: c.entries[index].provenance.to_string(),
            total,
        })
        .collect();
    let (contingency, missed_pairs) = match engine {
        None => (None, None),
        Some(engine) => {
            let sigs = corpus_signatures(c, engine, jobs, layers);
            let mut table = Contingency::default();
            let mut missed = Vec::new();
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    let separated = sigs[i] != sigs[j];
                    let diff = totals[i] != totals[j];
                    match (separated, diff) {
                        (true, true) => table.separated_count_diff += 1,
                        (true, false) => table.separated_count_equal += 1,
                        (false, true) => {
                            table.not_separated_count_diff += 1;
                            if missed.len() < 10 {
                                missed.push((i, j));
                            }
                        }
                        (false, false) => table.not_separated_count_equal += 1,
                    }
                }
            }
            (Some(table), Some(missed))
        }
    };
    CountingProbeReport {
        schema_version: REPORT_SCHEMA_VERSION,
        corpus: c.name.clone(),
        pattern: pattern.name.clone(),
        engine: engine.map(|e| e.name()),
        graph_count: c.len(),
        counts,
        contingency,
        missed_pairs,
    }
}

#[derive(Clone, Copy, Debug)]
pub struct KernelProbeConfig {
    pub k: usize,
    pub width: usize,
    pub layers: usize,
    pub seed: u64,
    /// Forward passes are run on at most this many corpus members.
    pub max_graphs: usize,
}

impl Default for KernelProbeConfig {
    fn default() -> Self {
        KernelProbeConfig {
            k: 4,
            width: 8,
            layers: 2,
            seed: 42,
            max_graphs: 8,
        }
    }
}

/// Per graph: exact pair/triple budgets from the decomposition arithmetic,
/// dense baselines, and reduction ratios; optionally measured kernel MACs.
pub fn profile_complexity(
    c: &Corpus,
    jobs: usize,
    kernel_cfg: Option<KernelProbeConfig>,
) -> ProfileReport {
    let graphs: Vec<&Graph> = c.graphs().collect();
    let rows: Vec<ProfileRow> = par_map(&graphs, jobs, |g| {
        let d = biconnected_decomposition(g);
        let n = g.node_count() as u64;
        let sparsified_pairs: u64 = d
            .components
            .iter()
            .map(|comp| (comp.len() * comp.len()) as u64)
            .sum();
        let sparsified_triples: u64 = d
            .blocks
            .iter()
            .map(|b| b.len() as u64)
            .filter(|&s| s >= 3)
            .map(|s| s * (s - 1) * (s - 2))
            .sum();
        let dense_pairs = n * n;
        let dense_triples = n.saturating_sub(1) * n.saturating_sub(2) * n;
        let dense_cubed = n * n * n;
        let ratio = |num: u64, den: u64| {
            if den == 0 {
                0.0
            } else {
                num as f64 / den as f64
            }
        };
        ProfileRow {
            index: 0,
            provenance: String::new(),
            n: g.node_count(),
            m: g.edge_count(),
            sparsified_pairs,
            sparsified_triples,
            dense_pairs,
            dense_triples,
            dense_cubed,
            pair_ratio: ratio(sparsified_pairs, dense_pairs),
            triple_ratio_distinct: ratio(sparsified_triples, dense_triples),
            triple_ratio_cubed: ratio(sparsified_triples, dense_cubed),
        }
    });
    let mut rows = rows;
    for (index, row) in rows.iter_mut().enumerate() {
        row.index = index;
        row.provenance = c.entries[index].provenance.to_string();
    }
    let count = rows.len().max(1) as f64;
    let eta = c.graphs().map(Graph::node_count).max().unwrap_or(0) as u64;
    let aggregate = ProfileAggregate {
        mean_pair_ratio: rows.iter().map(|r| r.pair_ratio).sum::<f64>() / count,
        mean_triple_ratio_distinct: rows.iter().map(|r| r.triple_ratio_distinct).sum::<f64>()
            / count,
        mean_triple_ratio_cubed: rows.iter().map(|r| r.triple_ratio_cubed).sum::<f64>() / count,
        exact_pair_slots: rows.iter().map(|r| r.sparsified_pairs).sum(),
        padded_pair_slots: eta * eta * c.len() as u64,
    };
    let kernel = kernel_cfg.map(|cfg| {
        let params = KernelParams::<f64>::seeded(cfg.layers, cfg.width, cfg.seed);
        let rows: Vec<KernelProbeRow> = c
            .entries
            .iter()
            .take(cfg.max_graphs)
            .enumerate()
            .map(|(index, entry)| {
                let g = &entry.graph;
                let d = biconnected_decomposition(g);
                let enc = compute_rrwp::<f64>(g, cfg.k);
                let sparse = cosparsify_plan(g, &d).expect("fresh decomposition");
                let dense = dense_plan(g);
                let (_, macs_s) = forward(g, &sparse, &enc, &params).expect("consistent");
                let (_, macs_d) = forward(g, &dense, &enc, &params).expect("consistent");
                KernelProbeRow {
                    index,
                    triple_macs_sparsified: macs_s.per_tag[NeighborTag::Triple.index()],
                    triple_macs_dense: macs_d.per_tag[NeighborTag::Triple.index()],
                    message_macs_sparsified: macs_s.message_total,
                    message_macs_dense: macs_d.message_total,
                }
            })
            .collect();
        KernelProbeReport {
            k: cfg.k,
            width: cfg.width,
            layers: cfg.layers,
            seed: cfg.seed,
            rows,
        }
    });
    ProfileReport {
        schema_version: REPORT_SCHEMA_VERSION,
        corpus: c.name.clone(),
        graph_count: c.len(),
        rows,
        aggregate,
        kernel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{isomorphic_bruteforce, PatternName};
    use crate::report::to_json_pretty;

    #[test]
    fn enumeration_counts_match_published_sequence() {
        // Connected simple graphs up to isomorphism on 1..=6 nodes.
        for (n, want) in [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112)] {
            assert_eq!(enumerate_connected(n).unwrap().len(), want, "n={n}");
        }
        assert_eq!(enumerate_connected_upto(5).unwrap().len(), 31);
        assert!(matches!(
            enumerate_connected(9),
            Err(HarnessError::EnumerationTooLarge(9))
        ));
    }

    #[test]
    #[ignore = "slow tier: full 7- and 8-node enumeration"]
    fn enumeration_counts_slow_tier() {
        assert_eq!(enumerate_connected(7).unwrap().len(), 853);
        assert_eq!(enumerate_connected(8).unwrap().len(), 11117);
    }

    // Independent route for n=5: enumerate all labeled graphs, filter
    // connected, dedup with the exact-isomorphism oracle.
    #[test]
    fn enumeration_agrees_with_labeled_dedup() {
        let n = 5usize;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut reps: Vec<Graph> = Vec::new();
        for mask in 0..(1u32 << pairs.len()) {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::new(n, edges).unwrap();
            if crate::connectivity::component_count(&g) != 1 {
                continue;
            }
            if reps.iter().all(|r| !isomorphic_bruteforce(r, &g).unwrap()) {
                reps.push(g);
            }
        }
        let corpus = enumerate_connected(n).unwrap();
        assert_eq!(reps.len(), corpus.len());
        // One-to-one matching between the two routes.
        for member in corpus.graphs() {
            assert_eq!(
                reps.iter()
                    .filter(|r| isomorphic_bruteforce(r, member).unwrap())
                    .count(),
                1
            );
        }
    }

    #[test]
    fn enumerated_members_are_connected_and_distinct() {
        let corpus = enumerate_connected(6).unwrap();
        for g in corpus.graphs() {
            assert_eq!(crate::connectivity::component_count(g), 1);
        }
        let codes: std::collections::HashSet<u64> = corpus.graphs().map(canonical_code).collect();
        assert_eq!(codes.len(), corpus.len());
    }

    #[test]
    fn enumerated_corpus_survives_graph6_round_trip() {
        let corpus = enumerate_connected(6).unwrap();
        for g in corpus.graphs() {
            let enc = crate::graph::to_graph6(g).unwrap();
            assert_eq!(&parse_graph6(&enc).unwrap(), g);
        }
    }

    #[test]
    fn certify_small_corpus_dense_vs_cosp() {
        let corpus = enumerate_connected_upto(5).unwrap();
        let report = certify_equivalence(&corpus, Engine::Fwl2Dense, Engine::Fwl2Cosp, 1, None);
        assert!(
            report.partitions_identical(),
            "violations: {:?}",
            report.violations
        );
        assert_eq!(report.class_count_a, corpus.len()); // all non-isomorphic, all separated
        assert_eq!(report.class_count_b, corpus.len());
    }

    #[test]
    fn certify_is_symmetric_up_to_labeling() {
        let corpus = enumerate_connected(4).unwrap();
        let ab = certify_equivalence(&corpus, Engine::Wl1, Engine::Fwl2Dense, 1, None);
        let ba = certify_equivalence(&corpus, Engine::Fwl2Dense, Engine::Wl1, 1, None);
        assert_eq!(ab.violations.len(), ba.violations.len());
        for (x, y) in ab.violations.iter().zip(&ba.violations) {
            assert_eq!((x.index_a, x.index_b), (y.index_a, y.index_b));
            assert_ne!(x.separated_by, y.separated_by);
        }
    }

    #[test]
    fn parallel_runs_match_serial() {
        let corpus = enumerate_connected(5).unwrap();
        let serial = certify_equivalence(&corpus, Engine::Fwl2Dense, Engine::Fwl2Cosp, 1, None);
        let parallel = certify_equivalence(&corpus, Engine::Fwl2Dense, Engine::Fwl2Cosp, 4, None);
        assert_eq!(to_json_pretty(&serial), to_json_pretty(&parallel));
    }

    #[test]
    fn union_corpus_is_reconstructible() {
        let base = enumerate_connected_upto(4).unwrap();
        let unions = union_corpus(&base, 20, 7);
        assert_eq!(unions.len(), 20);
        for entry in unions.entries() {
            let Provenance::Generated { params, .. } = &entry.provenance else {
                panic!("union members are generated");
            };
            let indices: Vec<usize> = params
                .split(':')
                .next_back()
                .unwrap()
                .trim_matches(['[', ']'])
                .split(", ")
                .map(|t| t.parse().unwrap())
                .collect();
            let parts: Vec<Graph> = indices.iter().map(|&i| base.graph(i).clone()).collect();
            assert_eq!(&generators::disjoint_union(&parts), &entry.graph);
        }
    }

    #[test]
    fn glued_corpus_respects_budgets() {
        let corpus = glued_corpus(50, 30, 8, 11);
        for entry in corpus.entries() {
            assert!(entry.graph.node_count() <= 30);
            let d = biconnected_decomposition(&entry.graph);
            assert!(d.blocks.iter().all(|b| b.len() <= 8));
            assert_eq!(crate::connectivity::component_count(&entry.graph), 1);
        }
        // Deterministic regeneration.
        let again = glued_corpus(50, 30, 8, 11);
        for (a, b) in corpus.entries().iter().zip(again.entries()) {
            assert_eq!(a.graph, b.graph);
        }
    }

    #[test]
    fn probe_trees_degenerate() {
        // Any corpus of trees has all triangle counts zero.
        let entries: Vec<CorpusEntry> = (2..=6)
            .map(|n| CorpusEntry {
                graph: generators::path(n),
                provenance: Provenance::Generated {
                    seed: 0,
                    params: format!("path:{n}"),
                },
            })
            .collect();
        let corpus = Corpus::new("paths", entries);
        let probe = counting_probe(
            &corpus,
            &Pattern::named(PatternName::Cycle3),
            Some(Engine::Fwl2Cosp),
            1,
            None,
        );
        assert!(probe.counts.iter().all(|c| c.total == 0));
        let t = probe.contingency.unwrap();
        assert_eq!(t.separated_count_diff + t.not_separated_count_diff, 0);
        // Non-isomorphic paths are still separated.
        assert_eq!(t.separated_count_equal, 10);
    }

    #[test]
    fn profile_fixtures() {
        let entries: Vec<CorpusEntry> = (3..=6)
            .map(|n| CorpusEntry {
                graph: generators::cycle(n),
                provenance: Provenance::Generated {
                    seed: 0,
                    params: format!("cycle:{n}"),
                },
            })
            .collect();
        let cycles = Corpus::new("cycles", entries);
        let report = profile_complexity(&cycles, 1, None);
        for row in &report.rows {
            // A cycle is one block: sparsified triples equal dense distinct.
            assert_eq!(row.sparsified_triples, row.dense_triples);
            assert_eq!(row.pair_ratio, 1.0);
        }

        let entries: Vec<CorpusEntry> = (2..=6)
            .map(|n| CorpusEntry {
                graph: generators::path(n),
                provenance: Provenance::Generated {
                    seed: 0,
                    params: format!("path:{n}"),
                },
            })
            .collect();
        let paths = Corpus::new("paths", entries);
        let report = profile_complexity(&paths, 1, None);
        assert!(report.rows.iter().all(|r| r.sparsified_triples == 0));
        assert_eq!(report.aggregate.mean_triple_ratio_cubed, 0.0);
    }

    #[test]
    fn profile_kernel_macs_confirm_plan_ratios() {
        let corpus = glued_corpus(3, 14, 5, 3);
        let cfg = KernelProbeConfig {
            max_graphs: 3,
            ..KernelProbeConfig::default()
        };
        let report = profile_complexity(&corpus, 1, Some(cfg));
        let kernel = report.kernel.unwrap();
        for (row, prow) in kernel.rows.iter().zip(&report.rows) {
            let d_l = (cfg.width * cfg.layers) as u64;
            assert_eq!(row.triple_macs_sparsified, prow.sparsified_triples * d_l);
            assert_eq!(row.triple_macs_dense, prow.dense_triples * d_l);
            assert_eq!(row.message_macs_dense, prow.dense_cubed * d_l);
        }
    }

    #[test]
    fn file_corpora_round_trip() {
        let dir = std::env::temp_dir().join(format!("cosparse-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let g6 = dir.join("graphs.g6");
        std::fs::write(&g6, "Bw\nC~\n").unwrap();
        let corpus = corpus_from_graph6_file(&g6).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.graph(0), &generators::complete(3));
        assert_eq!(corpus.graph(1), &generators::complete(4));

        let eldir = dir.join("edgelists");
        std::fs::create_dir_all(&eldir).unwrap();
        std::fs::write(eldir.join("a.edgelist"), generators::path(3).to_edge_list()).unwrap();
        std::fs::write(
            eldir.join("b.edgelist"),
            generators::cycle(4).to_edge_list(),
        )
        .unwrap();
        let corpus = corpus_from_edgelist_dir(&eldir).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.graph(0), &generators::path(3));
        assert_eq!(corpus.graph(1), &generators::cycle(4));
        std::fs::remove_dir_all(&dir).unwrap();

        let missing = corpus_from_graph6_file(Path::new("/nonexistent/x.g6"));
        assert!(matches!(missing, Err(HarnessError::Io(_))));
    }

    #[test]
    fn demo_pairs_ship_types() {
        let pairs = demo_pairs();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].1.node_count(), 6);
        assert_eq!(pairs[1].1.node_count(), 16);
    }
}

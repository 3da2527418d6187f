//! Versioned, machine-readable report documents. Field order is fixed by the
//! struct definitions and collections are pre-sorted, so serialized reports
//! are byte-identical across runs; wall-clock timing is opt-in and excluded
//! by default for that reason.

use serde::Serialize;

use crate::connectivity::ConnectivityDecomposition;
use crate::graph::Graph;
use crate::sparsify::{InteractionPlan, PlanFlavor, PlanStats};

pub const REPORT_SCHEMA_VERSION: &str = "1";

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockCutEdge {
    pub block: usize,
    pub cut_node: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub schema_version: &'static str,
    pub n: usize,
    pub m: usize,
    pub components: Vec<Vec<usize>>,
    pub blocks: Vec<Vec<usize>>,
    pub cut_nodes: Vec<usize>,
    pub block_cut_tree: Vec<BlockCutEdge>,
}

impl DecompositionReport {
    pub fn new(g: &Graph, d: &ConnectivityDecomposition) -> Self {
        DecompositionReport {
            schema_version: REPORT_SCHEMA_VERSION,
            n: g.node_count(),
            m: g.edge_count(),
            components: d.components.clone(),
            blocks: d.blocks.clone(),
            cut_nodes: d.cut_nodes.clone(),
            block_cut_tree: d
                .block_cut_edges
                .iter()
                .map(|&(block, cut_node)| BlockCutEdge { block, cut_node })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanStatsReport {
    pub pair_count: u64,
    pub triple_count: u64,
    pub two_node_count: u64,
    pub entry_count: u64,
    pub triple: u64,
    pub self_left: u64,
    pub self_right: u64,
    pub back: u64,
    pub diag_self: u64,
}

impl From<&PlanStats> for PlanStatsReport {
    fn from(s: &PlanStats) -> Self {
        PlanStatsReport {
            pair_count: s.pair_count,
            triple_count: s.triple_count,
            two_node_count: s.two_node_count,
            entry_count: s.entry_count,
            triple: s.per_tag[0],
            self_left: s.per_tag[1],
            self_right: s.per_tag[2],
            back: s.per_tag[3],
            diag_self: s.per_tag[4],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NeighborReport {
    pub tag: &'static str,
    pub via: usize,
    pub left: (usize, usize),
    pub right: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub u: usize,
    pub v: usize,
    pub neighbors: Vec<NeighborReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanReport {
    pub schema_version: &'static str,
    pub flavor: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_dist: Option<usize>,
    pub n: usize,
    pub stats: PlanStatsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<PairReport>>,
}

impl PlanReport {
    pub fn new(plan: &InteractionPlan, include_pairs: bool) -> Self {
        let max_dist = match plan.flavor() {
            PlanFlavor::DistanceBounded { max_dist } => Some(max_dist),
            _ => None,
        };
        let pairs = include_pairs.then(|| {
            (0..plan.pair_count())
                .map(|pos| {
                    let (u, v) = plan.pairs()[pos];
                    PairReport {
                        u: u as usize,
                        v: v as usize,
                        neighbors: plan
                            .neighbors_of(pos)
                            .iter()
                            .map(|e| {
                                let (lu, lv) = plan.pairs()[e.left as usize];
                                let (ru, rv) = plan.pairs()[e.right as usize];
                                NeighborReport {
                                    tag: e.tag.name(),
                                    via: e.via as usize,
                                    left: (lu as usize, lv as usize),
                                    right: (ru as usize, rv as usize),
                                }
                            })
                            .collect(),
                    }
                })
                .collect()
        });
        PlanReport {
            schema_version: REPORT_SCHEMA_VERSION,
            flavor: plan.flavor().name(),
            max_dist,
            n: plan.node_count(),
            stats: plan.stats().into(),
            pairs,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub schema_version: &'static str,
    pub engine: String,
    pub result: &'static str,
    pub signature_a: String,
    pub signature_b: String,
    pub stable_iterations_a: usize,
    pub stable_iterations_b: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub index_a: usize,
    pub index_b: usize,
    /// Which engine separates the pair ("a" or "b").
    pub separated_by: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub schema_version: &'static str,
    pub corpus: String,
    pub engine_a: String,
    pub engine_b: String,
    pub graph_count: usize,
    pub class_count_a: usize,
    pub class_count_b: usize,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl EquivalenceReport {
    pub fn partitions_identical(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Contingency {
    pub separated_count_diff: u64,
    pub separated_count_equal: u64,
    pub not_separated_count_diff: u64,
    pub not_separated_count_equal: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphCount {
    pub index: usize,
    pub provenance: String,
    pub total: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountingProbeReport {
    pub schema_version: &'static str,
    pub corpus: String,
    pub pattern: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<String>,
    pub graph_count: usize,
    pub counts: Vec<GraphCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contingency: Option<Contingency>,
    /// Pairs with different counts that the engine did not separate; the
    /// soundness cell, capped at 10 examples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missed_pairs: Option<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileRow {
    pub index: usize,
    pub provenance: String,
    pub n: usize,
    pub m: usize,
    /// Sum over components of n_i^2.
    pub sparsified_pairs: u64,
    /// Sum over blocks with at least 3 nodes of |B|(|B|-1)(|B|-2).
    pub sparsified_triples: u64,
    pub dense_pairs: u64,
    /// n(n-1)(n-2) ordered distinct triples.
    pub dense_triples: u64,
    pub dense_cubed: u64,
    pub pair_ratio: f64,
    pub triple_ratio_distinct: f64,
    pub triple_ratio_cubed: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileAggregate {
    pub mean_pair_ratio: f64,
    pub mean_triple_ratio_distinct: f64,
    pub mean_triple_ratio_cubed: f64,
    /// Per-graph pair slots vs padding every graph to the corpus maximum.
    pub exact_pair_slots: u64,
    pub padded_pair_slots: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelProbeRow {
    pub index: usize,
    pub triple_macs_sparsified: u64,
    pub triple_macs_dense: u64,
    pub message_macs_sparsified: u64,
    pub message_macs_dense: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelProbeReport {
    pub k: usize,
    pub width: usize,
    pub layers: usize,
    pub seed: u64,
    pub rows: Vec<KernelProbeRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileReport {
    pub schema_version: &'static str,
    pub corpus: String,
    pub graph_count: usize,
    pub rows: Vec<ProfileRow>,
    pub aggregate: ProfileAggregate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelProbeReport>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::biconnected_decomposition;
    use crate::graph::generators::complete;
    use crate::sparsify::cosparsify_plan;

    #[test]
    fn serialization_is_stable() {
        let g = complete(3);
        let d = biconnected_decomposition(&g);
        let r = DecompositionReport::new(&g, &d);
        assert_eq!(to_json_pretty(&r), to_json_pretty(&r));
        assert!(to_json_pretty(&r).contains("\"schema_version\": \"1\""));
    }

    #[test]
    fn plan_report_shape() {
        let g = complete(3);
        let d = biconnected_decomposition(&g);
        let plan = cosparsify_plan(&g, &d).unwrap();
        let with = PlanReport::new(&plan, true);
        assert_eq!(with.pairs.as_ref().unwrap().len(), 9);
        let text = to_json_pretty(&with);
        assert!(text.contains("TRIPLE"));
        assert!(text.contains("DIAG_SELF"));
        let without = PlanReport::new(&plan, false);
        assert!(!to_json_pretty(&without).contains("\"pairs\""));
    }
}

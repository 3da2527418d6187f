//! Numeric forward pass over an interaction plan (no learning): messages are
//! element-wise products of source-pair vectors summed in plan order, mixed
//! with the carried state by a seeded affine map and tanh. Used for
//! permutation-equivariance checks and exact multiply-accumulate accounting
//! of dense vs sparsified execution.
//!
//! No padding to a batch maximum: tensors hold exactly the materialized pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::connectivity::biconnected_decomposition;
use crate::graph::{generators, Graph};
use crate::matrix::Matrix;
use crate::rrwp::{compute_rrwp, RrwpEncoding};
use crate::scalar::Real;
use crate::sparsify::{
    cosparsify_plan, dense_plan, distance_bounded_plan, InteractionPlan, PlanFlavor, TAG_COUNT,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("feature width {width} is smaller than the encoding order {k}")]
    WidthTooSmall { width: usize, k: usize },
    #[error("encoding built for {enc_nodes} nodes, graph has {graph_nodes}")]
    NodeCountMismatch {
        enc_nodes: usize,
        graph_nodes: usize,
    },
    #[error("plan built for {plan_nodes} nodes, graph has {graph_nodes}")]
    PlanMismatch {
        plan_nodes: usize,
        graph_nodes: usize,
    },
}

/// Feature vectors over exactly the materialized pairs of one plan.
#[derive(Clone, Debug, PartialEq)]
pub struct PairTensor<R> {
    width: usize,
    values: Vec<R>,
}

impl<R: Real> PairTensor<R> {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pair_count(&self) -> usize {
        self.values.len().checked_div(self.width).unwrap_or(0)
    }

    pub fn value(&self, pos: usize) -> &[R] {
        &self.values[pos * self.width..(pos + 1) * self.width]
    }

    fn value_mut(&mut self, pos: usize) -> &mut [R] {
        &mut self.values[pos * self.width..(pos + 1) * self.width]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PhiKind {
    /// tanh(W_c h + W_m msg + b)
    Affine,
    /// Keep the carried state, discard the aggregated message.
    CarryProjection,
}

/// Deterministic per-layer mixing maps, seeded; `carry_projection` gives the
/// identity-kernel used to check that aggregation touches nothing else.
#[derive(Clone, Debug)]
pub struct KernelParams<R> {
    layers: usize,
    width: usize,
    seed: u64,
    kind: PhiKind,
    w_carry: Vec<Matrix<R>>,
    w_msg: Vec<Matrix<R>>,
    bias: Vec<Vec<R>>,
}

impl<R: Real> KernelParams<R> {
    pub fn seeded(layers: usize, width: usize, seed: u64) -> Self {
        let scale = (1.0 / width.max(1) as f64).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sample = |rng: &mut ChaCha8Rng| R::of_f64(rng.gen_range(-scale..=scale));
        let mut w_carry = Vec::new();
        let mut w_msg = Vec::new();
        let mut bias = Vec::new();
        for _ in 0..layers {
            let mut wc = Matrix::zeros(width, width);
            let mut wm = Matrix::zeros(width, width);
            for i in 0..width {
                for j in 0..width {
                    wc[(i, j)] = sample(&mut rng);
                    wm[(i, j)] = sample(&mut rng);
                }
            }
            w_carry.push(wc);
            w_msg.push(wm);
            bias.push((0..width).map(|_| sample(&mut rng)).collect());
        }
        KernelParams {
            layers,
            width,
            seed,
            kind: PhiKind::Affine,
            w_carry,
            w_msg,
            bias,
        }
    }

    pub fn carry_projection(layers: usize, width: usize) -> Self {
        KernelParams {
            layers,
            width,
            seed: 0,
            kind: PhiKind::CarryProjection,
            w_carry: Vec::new(),
            w_msg: Vec::new(),
            bias: Vec::new(),
        }
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Applies one layer's mixing map to (carried, aggregated); reference
    /// implementations reuse this so they differ only in how they aggregate.
    pub fn apply_phi(&self, layer: usize, carried: &[R], aggregated: &[R]) -> Vec<R> {
        match self.kind {
            PhiKind::CarryProjection => carried.to_vec(),
            PhiKind::Affine => {
                let wc = &self.w_carry[layer];
                let wm = &self.w_msg[layer];
                let b = &self.bias[layer];
                (0..self.width)
                    .map(|i| {
                        let mut acc = b[i];
                        for j in 0..self.width {
                            acc += wc[(i, j)] * carried[j] + wm[(i, j)] * aggregated[j];
                        }
                        acc.tanh()
                    })
                    .collect()
            }
        }
    }
}

/// Exact multiply-accumulate counts for one forward pass. Message counts are
/// split by entry tag; `message_total` covers the aggregation stage
/// (entry_count x width per layer) and `affine_total` the mixing stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MacCounts {
    pub per_tag: [u64; TAG_COUNT],
    pub message_total: u64,
    pub affine_total: u64,
}

/// Initial pair features: the walk-probability vector in slots 0..K, then an
/// edge indicator and a diagonal indicator when the width allows, zero-padded.
fn init_tensor<R: Real>(
    g: &Graph,
    plan: &InteractionPlan,
    enc: &RrwpEncoding<R>,
    width: usize,
) -> PairTensor<R> {
    let k = enc.order();
    let mut t = PairTensor {
        width,
        values: vec![R::zero(); plan.pair_count() * width],
    };
    for (pos, &(u, v)) in plan.pairs().iter().enumerate() {
        let (u, v) = (u as usize, v as usize);
        let row = t.value_mut(pos);
        for (j, slot) in row.iter_mut().take(k).enumerate() {
            *slot = enc.value(u, v, j);
        }
        if width > k {
            row[k] = if u != v && g.has_edge(u, v) {
                R::one()
            } else {
                R::zero()
            };
        }
        if width > k + 1 {
            row[k + 1] = if u == v { R::one() } else { R::zero() };
        }
    }
    t
}

/// Forward pass: per layer, each pair aggregates element-wise products of its
/// plan-listed sources (in plan order) and mixes them with the carried state.
/// Deterministic for a fixed seed; returns the tensor and exact MAC counts.
pub fn forward<R: Real>(
    g: &Graph,
    plan: &InteractionPlan,
    enc: &RrwpEncoding<R>,
    params: &KernelParams<R>,
) -> Result<(PairTensor<R>, MacCounts), KernelError> {
    if enc.node_count() != g.node_count() {
        return Err(KernelError::NodeCountMismatch {
            enc_nodes: enc.node_count(),
            graph_nodes: g.node_count(),
        });
    }
    if plan.node_count() != g.node_count() {
        return Err(KernelError::PlanMismatch {
            plan_nodes: plan.node_count(),
            graph_nodes: g.node_count(),
        });
    }
    let width = params.width;
    if width < enc.order() {
        return Err(KernelError::WidthTooSmall {
            width,
            k: enc.order(),
        });
    }

    let mut state = init_tensor(g, plan, enc, width);
    let mut macs = MacCounts::default();
    let mut agg = vec![R::zero(); plan.pair_count() * width];
    for layer in 0..params.layers {
        agg.iter_mut().for_each(|x| *x = R::zero());
        for pos in 0..plan.pair_count() {
            let out_base = pos * width;
            for e in plan.neighbors_of(pos) {
                let left = state.value(e.left as usize);
                let right = state.value(e.right as usize);
                for j in 0..width {
                    agg[out_base + j] += left[j] * right[j];
                }
                macs.per_tag[e.tag.index()] += width as u64;
                macs.message_total += width as u64;
            }
        }
        match params.kind {
            PhiKind::CarryProjection => {}
            PhiKind::Affine => {
                let mut next = vec![R::zero(); plan.pair_count() * width];
                for pos in 0..plan.pair_count() {
                    let h = state.value(pos);
                    let m = &agg[pos * width..(pos + 1) * width];
                    let mixed = params.apply_phi(layer, h, m);
                    next[pos * width..(pos + 1) * width].copy_from_slice(&mixed);
                    macs.affine_total += 2 * (width * width) as u64;
                }
                state.values = next;
            }
        }
    }
    Ok((state, macs))
}

/// Maximum relative deviation between forward(pi . g) and the pi-permuted
/// forward(g) over `trials` seeded random node permutations.
pub fn check_equivariance<R: Real>(
    g: &Graph,
    flavor: PlanFlavor,
    k: usize,
    params: &KernelParams<R>,
    trials: usize,
    seed: u64,
) -> R {
    assert!(trials >= 1, "at least one trial");
    let build = |graph: &Graph| -> (InteractionPlan, RrwpEncoding<R>) {
        let plan = match flavor {
            PlanFlavor::Dense => dense_plan(graph),
            PlanFlavor::Cosparsified => {
                cosparsify_plan(graph, &biconnected_decomposition(graph)).expect("fresh")
            }
            PlanFlavor::DistanceBounded { max_dist } => {
                distance_bounded_plan(graph, &biconnected_decomposition(graph), max_dist)
                    .expect("fresh")
            }
        };
        (plan, compute_rrwp(graph, k))
    };
    let (plan, enc) = build(g);
    let (base, _) = forward(g, &plan, &enc, params).expect("consistent inputs");
    let mut worst = R::zero();
    for trial in 0..trials {
        let perm = generators::random_permutation(
            g.node_count(),
            seed ^ (trial as u64).wrapping_mul(0x9e37_79b9),
        );
        let gp = g.permuted(&perm);
        let (plan_p, enc_p) = build(&gp);
        let (out_p, _) = forward(&gp, &plan_p, &enc_p, params).expect("consistent inputs");
        for (pos, &(u, v)) in plan.pairs().iter().enumerate() {
            let pos_p = plan_p
                .pair_position(perm[u as usize], perm[v as usize])
                .expect("permuted pair is materialized");
            let a = base.value(pos);
            let b = out_p.value(pos_p);
            for j in 0..params.width {
                let denom = a[j].abs().max(b[j].abs()).max(R::one());
                let dev = (a[j] - b[j]).abs() / denom;
                if dev > worst {
                    worst = dev;
                }
            }
        }
    }
    worst
}

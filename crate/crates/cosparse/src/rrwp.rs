//! Relative random-walk probability encodings and initial pair features.
//!
//! The encoding stacks [I, A_hat, A_hat^2, ...] where A_hat is the
//! row-stochastic walk matrix; since A_hat is block-diagonal over connected
//! components, global and per-component computation coincide and
//! cross-component entries are exactly zero.
//!
//! Discrete refinement never consumes the real-valued encoding; it uses the
//! 4-way pair category instead, and `init_coloring` rejects features that
//! carry the numeric part. The numeric kernel is the only RRWP consumer.

use serde::Serialize;

use crate::connectivity::connected_components;
use crate::graph::{random_walk_matrix, EdgeLabeling, Graph, NodeLabeling};
use crate::matrix::Matrix;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct RrwpEncoding<R> {
    k: usize,
    n: usize,
    /// powers[j] = A_hat^j, with powers[0] = I.
    powers: Vec<Matrix<R>>,
}

impl<R: Real> RrwpEncoding<R> {
    pub fn order(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn value(&self, u: usize, v: usize, j: usize) -> R {
        self.powers[j][(u, v)]
    }

    /// The K-vector `[(A_hat^0)[u,v], ..., (A_hat^{K-1})[u,v]]`.
    pub fn values(&self, u: usize, v: usize) -> Vec<R> {
        (0..self.k).map(|j| self.value(u, v, j)).collect()
    }
}

/// Exact repeated multiplication by the walk matrix; K slices, first is I.
pub fn compute_rrwp<R: Real>(g: &Graph, k: usize) -> RrwpEncoding<R> {
    assert!(k >= 1, "at least one power required");
    let n = g.node_count();
    let a_hat = random_walk_matrix::<R>(g);
    let mut powers = Vec::with_capacity(k);
    powers.push(Matrix::identity(n));
    for j in 1..k {
        let next = powers[j - 1].matmul(&a_hat);
        powers.push(next);
    }
    RrwpEncoding { k, n, powers }
}

/// Discrete structural relation of an ordered pair; the categorical stand-in
/// for the walk encoding when refinement needs injectivity over exact values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PairCategory {
    SelfPair,
    Adjacent,
    ConnectedNonAdjacent,
    Disconnected,
}

/// Discrete slice of the initial features of one ordered pair: node labels,
/// edge label (or 0/1 indicator), and the pair category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InitRecord {
    pub xu: u64,
    pub xv: u64,
    pub e: u64,
    pub cat: PairCategory,
}

/// Initial features over all ordered pairs: discrete parts always present,
/// structural part either the categorical relation or the walk encoding.
pub struct PairFeatures<'a, R: Real> {
    g: &'a Graph,
    component_of: Vec<usize>,
    node_labels: Option<&'a NodeLabeling>,
    edge_labels: Option<&'a EdgeLabeling>,
    enc: Option<&'a RrwpEncoding<R>>,
}

pub fn initial_pair_features<'a, R: Real>(
    g: &'a Graph,
    node_labels: Option<&'a NodeLabeling>,
    edge_labels: Option<&'a EdgeLabeling>,
    enc: Option<&'a RrwpEncoding<R>>,
) -> PairFeatures<'a, R> {
    if let Some(enc) = enc {
        assert_eq!(
            enc.node_count(),
            g.node_count(),
            "encoding from another graph"
        );
    }
    PairFeatures {
        g,
        component_of: connected_components(g),
        node_labels,
        edge_labels,
        enc,
    }
}

/// Default features: no labels, categorical structural part.
pub fn plain_pair_features(g: &Graph) -> PairFeatures<'_, f64> {
    initial_pair_features(g, None, None, None)
}

impl<'a, R: Real> PairFeatures<'a, R> {
    pub fn node_count(&self) -> usize {
        self.g.node_count()
    }

    pub fn is_discrete(&self) -> bool {
        self.enc.is_none()
    }

    pub fn category(&self, u: usize, v: usize) -> PairCategory {
        if u == v {
            PairCategory::SelfPair
        } else if self.g.has_edge(u, v) {
            PairCategory::Adjacent
        } else if self.component_of[u] == self.component_of[v] {
            PairCategory::ConnectedNonAdjacent
        } else {
            PairCategory::Disconnected
        }
    }

    pub fn record(&self, u: usize, v: usize) -> InitRecord {
        let label = |x: usize| self.node_labels.map_or(0, |l| l.label(x));
        let e = match self.edge_labels {
            Some(el) if u != v => el.label(u, v).unwrap_or(0),
            _ => u64::from(u != v && self.g.has_edge(u, v)),
        };
        InitRecord {
            xu: label(u),
            xv: label(v),
            e,
            cat: self.category(u, v),
        }
    }

    /// The structural walk vector, when the encoding is attached.
    pub fn walk_vector(&self, u: usize, v: usize) -> Option<Vec<R>> {
        self.enc.map(|enc| enc.values(u, v))
    }
}

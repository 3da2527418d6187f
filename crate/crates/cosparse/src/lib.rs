//! Connectivity-aware sparsification of pairwise (2-FWL) message passing.
//!
//! The crate decomposes graphs into connected and biconnected components,
//! materializes interaction plans (dense, co-sparsified, distance-bounded),
//! runs discrete color refinement over those plans, and certifies that the
//! co-sparsified engine induces exactly the same distinctions as the dense
//! one on exhaustive and generated corpora. A numeric forward kernel checks
//! permutation equivariance and accounts for the multiply-accumulate savings,
//! and brute-force oracles (substructure counts, disjoint paths, exact
//! isomorphism) provide independent ground truth.

pub mod connectivity;
pub mod digest;
pub mod graph;
pub mod harness;
pub mod kernel;
pub mod matrix;
pub mod oracle;
pub mod refine;
pub mod report;
pub mod rrwp;
pub mod scalar;
pub mod sparsify;

pub use graph::Graph;
pub use scalar::Real;

/// Default scalar type for the numeric modules.
pub type Scalar = f64;

/// Dense matrix over the default scalar.
pub type Matrix64 = matrix::Matrix<f64>;
/// Random-walk probability encoding over the default scalar.
pub type Rrwp64 = rrwp::RrwpEncoding<f64>;
/// Per-pair feature tensor over the default scalar.
pub type PairTensor64 = kernel::PairTensor<f64>;
/// Forward-kernel parameters over the default scalar.
pub type KernelParams64 = kernel::KernelParams<f64>;

//! Hypergraph dualization.
//!
//! Decides whether `H = tr(G)` for simple hypergraphs `G` and `H` by walking
//! a logarithmic-depth decomposition tree whose nodes can be recomputed from
//! a short path descriptor, so a full decision only keeps one root-to-node
//! path alive. Non-duality comes with a witness, a transversal of `G` that
//! contains no edge of `H`, which is greedily shrunk to a missing minimal
//! transversal.
//!
//! On top of that:
//! - incremental enumeration of all minimal transversals,
//! - maximal-frequent / minimal-infrequent itemset borders of a 0/1 relation,
//! - minimal keys of a relation,
//! - the non-domination test for coteries.
//!
//! ```
//! use hyperdual::{decide_dual, Hypergraph};
//!
//! let g: Hypergraph = "1 2\n1 3\n".parse()?;
//! let h: Hypergraph = "universe: 1 2 3\n2 3\n".parse()?;
//! let verdict = decide_dual(&g, &h)?;
//! assert!(!verdict.is_dual());
//! assert_eq!(verdict.minimal_witness.unwrap().ids(), vec![1]);
//! # Ok::<(), hyperdual::Error>(())
//! ```
//!
//! The [`oracle`] module holds exhaustive reference implementations for
//! small inputs.

pub mod duality;
pub mod error;
pub mod hypergraph;
pub mod mining;
pub mod oracle;
pub mod tree;

pub use duality::{
    decide_dual, decide_dual_with, enumerate_transversals, minimalize_transversal, precheck, precheck_witness,
    require_precheck, verify_fail_path, DecideOptions, Decision, DualityVerdict, MinimalityViolation, Outcome,
    PrecheckReport, TransversalEnumerator,
};
pub use error::{Error, Result};
pub use hypergraph::{restrict, DualityInstance, Edge, Hypergraph, VertexId, VertexSet};
pub use mining::{
    check_additional_key, check_identification, coterie_verdict, disagreement_hypergraph, enumerate_minimal_keys,
    extend_to_maximal_frequent, frequency, is_frequent, is_nondominated_coterie, mine_all,
    shrink_to_minimal_infrequent, BorderState, Borders, Identification, KeyCheck, Relation, Threshold,
};
pub use tree::{
    decompose, decompose_traced, depth_bound, frequent_vertices, marksmall, next, pathnode, process_children,
    root_attributes, traverse_first_fail, traverse_first_fail_traced, DecomposeMode, DecomposeOptions,
    DecompositionTree, DescriptorBounds, Mark, NodeAttributes, PathDescriptor, ProcessOutcome, RunStats,
};

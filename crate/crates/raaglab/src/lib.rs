//! Splitting analysis for right-angled Artin groups and a finite-scale
//! laboratory for graph-product geometry.
//!
//! Given a finite simple graph Γ, the library decides whether the
//! right-angled Artin group A(Γ) splits over an abelian subgroup (Γ is
//! complete or separated by a complete subgraph) and emits verifiable
//! certificates: separating cliques, complete-cut trees, unpinched
//! decompositions and thickness chains. Alongside the decision procedures
//! it provides finite-scale models of the geometry behind them: normal
//! forms in graph products, quasi-median Cayley balls with their
//! hyperplanes, invasive subgraphs, and coarse-separation experiments.

pub mod enumerate;
pub mod fixtures;
pub mod graph;
pub mod morse;
pub mod qm;
pub mod separation;
pub mod splitting;
pub mod thickness;
pub mod tree_ray;
pub mod words;

mod error;

pub use error::Error;
pub use graph::{Presentation, SimpleGraph, StructuralSummary, WeightedGraph};
pub use splitting::{
    classify_splitting, complete_cut_decomposition, embedding_obstruction, is_unpinched,
    unpinched_decomposition, CutTree, ObstructionReport, SplitCertificate, SplitVerdict,
    UnpinchedDecomposition,
};
pub use words::{GroupWord, NormalForm, Syllable};

/// Library-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

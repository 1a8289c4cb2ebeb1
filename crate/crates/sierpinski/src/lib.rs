#![forbid(unsafe_code)]

//! Sierpinski products of graphs.
//!
//! The product of graphs `G` and `H` under a vertex map `f : V(G) -> V(H)`
//! places one copy of `H` over every vertex of `G` and, for every edge
//! `{g, g'}` of `G`, joins the copies by the single edge
//! `{(g, f(g')), (g', f(g))}`. Iterating the construction with identity
//! maps yields the generalized Sierpinski graphs.
//!
//! The crate builds these products (binary, multi-factor, generalized),
//! decides planarity with embedding or Kuratowski witnesses, computes
//! metric quantities and bounds, and analyses the symmetry structure of
//! products: the automorphisms preserving the inner/connecting edge
//! partition, their lifts from factor automorphisms, and the semidirect
//! decomposition of the partition-preserving group.

pub mod analysis;
pub mod aut;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod limits;
pub mod perm;
pub mod planarity;
pub mod product;
pub mod symmetry;

pub use analysis::{
    apex_extension, connecting_edge_cycle_check, diameter_bound, embedding_condition_check,
    genus_lower_bound, is_outerplanar, product_planarity, ProductPlanarityReport,
};
pub use aut::{are_isomorphic, automorphism_group, find_isomorphism};
pub use error::{Error, Result};
pub use graph::{Diameter, Graph};
pub use limits::Limits;
pub use perm::{check_semidirect, PermGroup, Permutation};
pub use planarity::{is_planar, planar_embedding, Planarity, RotationSystem};
pub use product::{
    chain_product, generalized_sierpinski, predicted_counts, sierpinski_product, ChainSpec,
    EdgeClass, ProductResult, VertexMap,
};
pub use symmetry::{
    conjecture_scan, diagonal_group, lift_bijection, make_copy_automorphism, make_lift,
    partition_forced_by_colors, partition_forced_case, per_copy_group, project_to_base,
    respects_partition, symmetry_groups, verify_decomposition, LiftSpec, ScanConfig,
    SymmetryGroups,
};

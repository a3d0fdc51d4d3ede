//! Relative and marked relative poset polytopes in exact arithmetic.
//!
//! A relative structure `(P, <, <')` pairs a poset with a weaker order such that the
//! ideal lattice `J(P,<)` is closed under the operation `*'`. Its polytope is the convex
//! hull of the indicators `1_{max_{<'} J}`; the trivial `<'` gives the order polytope and
//! `<' = <` the chain polytope. The crate enumerates these polytopes, their canonical
//! triangulations and regular subdivisions for weights in the distinguished cone,
//! markings and their standardization, and the Gelfand-Tsetlin and FFLV structures on
//! flag posets.

pub mod degeneration;
pub mod error;
pub mod exact;
pub mod flag;
pub mod lattice;
pub mod marked;
pub mod polytope;
pub mod poset;

pub use degeneration::{
    canonical_interior_weight, cone_position, ideal_presentation, refinement_epsilon,
    sample_cone_weight, standard_monomial_count, subdivide, zhu_components, Component, ConeClass,
    ConeReport, IdealPresentation, Part, PresentationKind, Subdivider, Subdivision, WeightVector,
};
pub use error::{Error, Result, Violation};
pub use flag::{build_flag_poset, flag_degeneration, flag_polytope, FlagData, FlagMode, PlueckerMode};
pub use lattice::{max_antichain, star, sublattice_to_order, Ideal, IdealLattice};
pub use marked::{
    build_mrpp, fundamental_decomposition, fundamental_mrpp, mcop_build, mcop_recognize,
    mrpp_subdivide, standardize, FundamentalDecomposition, Marking, StandardizedStructure,
};
pub use polytope::{
    build_polytope, canonical_triangulation, check_normality, decompose_point, ehrhart_values,
    lattice_points, transfer_map, LatticePolytope, NormalityReport, PolytopeKind, Simplex,
};
pub use poset::{validate_relative_structure, Poset, RelativeStructure};

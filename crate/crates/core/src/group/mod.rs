//! Finite permutation groups, subgroups, homomorphisms and the subgroup
//! lattice.

pub mod builtin;
mod collection;
mod finite;
mod hom;
mod lattice;
mod subgroup;

pub use builtin::{parse_cycles, GroupSpec};
pub use collection::Collection;
pub use finite::{Elem, FiniteGroup, Stabilizers, DEFAULT_MAX_ORDER};
pub use hom::{automorphisms, chain_stabilizer, close_automorphisms, k_normalizer, GroupHom, MAX_AUT_ORDER};
pub use lattice::{
    all_subgroups, classes_where, conjugacy_class, conjugacy_class_under, cyclic_generators, p_subgroup_classes, subgroups_of,
    subgroups_up_to_conjugacy, SubgroupClass, DEFAULT_MAX_TESTS,
};
pub use subgroup::{ElemSet, Subgroup, SubgroupChain};

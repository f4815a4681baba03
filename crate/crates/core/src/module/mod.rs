//! Modules over finite categories: restriction, induction, projective
//! resolutions and higher limits.

mod catmodule;
mod ext;
mod induce;
mod lambda;
mod resolution;

pub use catmodule::{hom_dim, hom_space, CatModule, ModuleViolation};
pub use ext::{
    cohomology, cohomology_with, comparison_map, ext, ext_from_resolution, higher_limits, hom_complex, map_on_cohomology,
    map_on_cohomology_with, projective_resolution, Cohomology, LiftChoice,
};
pub use induce::{
    induce, induce_along_projection, induced_dims_along_fusion_subgroup, induced_dims_along_subgroup, Induced,
};
pub use lambda::{lambda_functor, p_orbit_category, GroupRep};
pub use resolution::{
    generated_submodule, generators_of_submodule, minimal_generators, processing_order, prune_generators, FreeLevel,
    FreeModule, ProjResolution,
};

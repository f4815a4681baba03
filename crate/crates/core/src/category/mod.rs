//! Explicit finite categories, functors, and the categories built from a
//! group and a collection of subgroups.

mod finite;
mod functor;
mod group;

pub use finite::{
    one_object_category, poset_category, CategoryBuilder, CategoryDump, CategoryViolation, FiniteCategory, MorId,
    Morphism, ObjId,
};
pub use functor::{skeleton, CatFunctor, FunctorViolation, Skeleton};
pub use group::{GroupCategory, GroupCategoryKind, Layout};

use std::sync::Arc;

use crate::group::{FiniteGroup, Subgroup};

/// The one-object category of a subgroup: morphisms are its elements in
/// sorted order, composed by the group product.
pub fn subgroup_category(group: &FiniteGroup, h: &Subgroup) -> Arc<FiniteCategory> {
    let elems = h.elements();
    let labels = elems.iter().map(|&g| group.cycle_string(g)).collect();
    Arc::new(one_object_category(&h.describe(group), labels, 0, |a, b| {
        h.position(group.mul(elems[a], elems[b])).expect("subgroup is closed")
    }))
}

//! Mod-p cohomology of finite p-groups with induced maps, and the functor
//! `H^n(-; F_p)` on categories built from a group.

mod orbit;
mod record;
mod store;

use std::sync::Arc;

pub use orbit::{cohomology_over_orbit, cohomology_over_orbit_upto, stable_elements_over, verify_inner_invariance, CohomologyOverOrbit};
pub use record::{group_cohomology, induced_map, induced_maps_with, CohomologyRecord};
pub use store::{CohomologyStore, RecordKey, CACHE_DIR_ENV, STORE_FORMAT_VERSION};

use crate::exec::ExecMode;

/// Shared cache and execution mode for cohomology computations.
#[derive(Clone, Debug)]
pub struct Context {
    pub store: Arc<CohomologyStore>,
    pub mode: ExecMode,
}

impl Context {
    pub fn new(store: CohomologyStore, mode: ExecMode) -> Self {
        Context { store: Arc::new(store), mode }
    }

    pub fn in_memory(mode: ExecMode) -> Self {
        Self::new(CohomologyStore::in_memory(), mode)
    }
}

impl Default for Context {
    fn default() -> Self {
        Self::in_memory(ExecMode::default())
    }
}

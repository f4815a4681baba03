use std::sync::Arc;

use serde::Serialize;

use crate::category::GroupCategoryKind;
use crate::cohomology::{cohomology_over_orbit, CohomologyRecord, Context};
use crate::error::{Error, Result};
use crate::fusion::{ClassCollection, FusionSystem};
use crate::linalg::FpMatrix;
use crate::module::higher_limits;

/// Dimensions of `lim^0 .. lim^bound` of one coefficient module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitsReport {
    pub category: String,
    pub coefficients: String,
    pub group: String,
    pub prime: u32,
    pub collection: String,
    /// Number of objects of the indexing category.
    pub objects: usize,
    pub bound: usize,
    pub dims: Vec<usize>,
    /// Digests of the cohomology records used, sorted.
    pub cache_keys: Vec<String>,
}

impl LimitsReport {
    /// `true` when every `lim^i` with `i >= 1` vanishes.
    pub fn is_sharp(&self) -> bool {
        self.dims.iter().skip(1).all(|&d| d == 0)
    }
}

pub(crate) fn digests(records: &[Arc<CohomologyRecord>]) -> Vec<String> {
    let mut keys: Vec<String> = records.iter().map(|r| r.key().digest()).collect();
    keys.sort();
    keys.dedup();
    keys
}

/// `lim^i H^n(-; F_p)` over `O(F_C)` for `i <= i_max`.
pub fn subgroup_limits(f: &FusionSystem, collection: &ClassCollection, n: usize, i_max: usize, ctx: &Context) -> Result<LimitsReport> {
    if collection.is_empty() {
        return Err(Error::Input(format!("collection {} is empty", collection.name)));
    }
    let cat = f.orbit_category(&collection.classes)?;
    let h = cohomology_over_orbit(&cat, f.prime(), n, ctx)?;
    Ok(LimitsReport {
        category: format!("O({})", f.name()),
        coefficients: format!("H^{n}(-;F_{})", f.prime().get()),
        group: f.group().name().to_string(),
        prime: f.prime().get(),
        collection: collection.name.clone(),
        objects: cat.category().num_objects(),
        bound: i_max,
        dims: higher_limits(&h.module, i_max),
        cache_keys: digests(&h.records),
    })
}

/// `H^n(F; F_p)` as stable elements: a row basis of the subspace of
/// `H^n(S; F_p)` cut out by every morphism of F.
#[derive(Clone, Debug)]
pub struct StableElements {
    pub basis: FpMatrix,
    /// The record of `S`, whose basis the rows are written in.
    pub record: Arc<CohomologyRecord>,
    pub records: Vec<Arc<CohomologyRecord>>,
}

impl StableElements {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
}

/// Stable elements of `H^n(S)` over the orbit category of F on all classes.
pub fn stable_elements(f: &FusionSystem, n: usize, ctx: &Context) -> Result<StableElements> {
    let all: Vec<usize> = (0..f.classes().len()).collect();
    let cat = f.category_on(&all, GroupCategoryKind::FusionOrbit)?;
    let h = cohomology_over_orbit(&cat, f.prime(), n, ctx)?;
    let top = f.top_class();
    debug_assert_eq!(cat.object(top), f.sylow());
    Ok(StableElements {
        basis: h.limit_at(top).row_space(),
        record: h.records[top].clone(),
        records: h.records.clone(),
    })
}

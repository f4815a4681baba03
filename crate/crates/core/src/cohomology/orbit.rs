use std::sync::Arc;

use super::record::{induced_maps_with, CohomologyRecord};
use super::Context;
use crate::category::{GroupCategory, GroupCategoryKind, MorId, ObjId};
use crate::error::{Error, Result};
use crate::group::{Elem, GroupHom};
use crate::linalg::{FpMatrix, Prime};
use crate::module::{CatModule, LiftChoice};

/// `K |-> H^n(K; F_p)` on a category built from a group, where a morphism
/// with token `g` acts by the map induced by `c_g`.
#[derive(Clone, Debug)]
pub struct CohomologyOverOrbit {
    pub category: GroupCategory,
    pub degree: usize,
    pub module: CatModule,
    pub records: Vec<Arc<CohomologyRecord>>,
}

impl CohomologyOverOrbit {
    pub fn dims(&self) -> Vec<usize> {
        self.module.dims().to_vec()
    }

    /// Basis of `lim^0` projected to the block at `x`.
    pub fn limit_at(&self, x: ObjId) -> FpMatrix {
        let lim = self.module.lim0();
        let offsets = self.module.offsets();
        let p = self.module.prime();
        let rows = lim.row_vecs().into_iter().map(|r| r[offsets[x]..offsets[x + 1]].to_vec()).collect();
        FpMatrix::from_residue_rows(p, self.module.dim(x), rows)
    }
}

fn records_for(cat: &GroupCategory, p: Prime, bound: usize, ctx: &Context) -> Result<Vec<Arc<CohomologyRecord>>> {
    let g = cat.group();
    if let Some(h) = cat.objects().iter().find(|h| !p.is_power(h.order())) {
        return Err(Error::Input(format!("{} is not a {}-group", h.describe(g), p.get())));
    }
    ctx.mode.try_map(cat.objects(), |h| ctx.store.get(g, h, p, bound))
}

fn conjugation_map(cat: &GroupCategory, x: ObjId, y: ObjId, token: Elem) -> GroupHom {
    GroupHom::conjugation(cat.group(), token, cat.object(x), cat.object(y))
}

/// The modules `H^n(-; F_p)` for `n = 0..=n_max` over `cat`, sharing one
/// comparison lift per morphism.
pub fn cohomology_over_orbit_upto(
    cat: &GroupCategory,
    p: Prime,
    n_max: usize,
    ctx: &Context,
) -> Result<Vec<CohomologyOverOrbit>> {
    let records = records_for(cat, p, n_max, ctx)?;
    let c = cat.category();
    let per_morphism: Vec<Vec<FpMatrix>> = ctx.mode.try_map(&(0..c.num_morphisms()).collect::<Vec<MorId>>(), |&f| {
        let (x, y) = (c.source(f), c.target(f));
        let hom = conjugation_map(cat, x, y, cat.token(f));
        induced_maps_with(&hom, &records[x], &records[y], n_max, LiftChoice::Canonical)
    })?;
    (0..=n_max)
        .map(|n| {
            let dims = records.iter().map(|r| r.dim(n)).collect();
            let action = per_morphism.iter().map(|maps| maps[n].clone()).collect();
            let module = CatModule::new(c.clone(), p, dims, action)?;
            if let Err(v) = module.check() {
                return Err(Error::Construction(format!("H^{n} is not functorial on {}: {v}", c.name())));
            }
            Ok(CohomologyOverOrbit { category: cat.clone(), degree: n, module, records: records.clone() })
        })
        .collect()
}

pub fn cohomology_over_orbit(cat: &GroupCategory, p: Prime, n: usize, ctx: &Context) -> Result<CohomologyOverOrbit> {
    Ok(cohomology_over_orbit_upto(cat, p, n, ctx)?.pop().expect("degree n is present"))
}

/// Checks that the action does not depend on the token within its class:
/// inner automorphisms of every object act trivially, and tokens moved by
/// the quotienting subgroups give the same matrices.
pub fn verify_inner_invariance(cat: &GroupCategory, p: Prime, n_max: usize, ctx: &Context) -> Result<()> {
    let g = cat.group();
    let records = records_for(cat, p, n_max, ctx)?;
    for (x, h) in cat.objects().iter().enumerate() {
        for &u in h.gens() {
            let maps = induced_maps_with(&conjugation_map(cat, x, x, u), &records[x], &records[x], n_max, LiftChoice::Canonical)?;
            for (n, m) in maps.iter().enumerate() {
                if *m != FpMatrix::identity(p, records[x].dim(n)) {
                    return Err(Error::Construction(format!(
                        "conjugation by {} acts nontrivially on H^{n}({})",
                        g.cycle_string(u),
                        h.describe(g)
                    )));
                }
            }
        }
    }
    let c = cat.category();
    let kind = cat.kind();
    let results = ctx.mode.map(&(0..c.num_morphisms()).collect::<Vec<MorId>>(), |&f| -> Result<()> {
        let (x, y) = (c.source(f), c.target(f));
        let t = cat.token(f);
        let base = induced_maps_with(&conjugation_map(cat, x, y, t), &records[x], &records[y], n_max, LiftChoice::Canonical)?;
        let mut others: Vec<Elem> = Vec::new();
        if matches!(kind, GroupCategoryKind::Orbit | GroupCategoryKind::FusionOrbit) {
            others.extend(cat.object(y).gens().iter().map(|&k| g.mul(k, t)));
        }
        if matches!(kind, GroupCategoryKind::Fusion | GroupCategoryKind::FusionOrbit) {
            let cent = g.centralizer(cat.object(x)).intersect(g, cat.ambient());
            others.extend(cent.gens().iter().map(|&z| g.mul(t, z)));
        }
        for t2 in others {
            debug_assert_eq!(cat.morphism_for(x, y, t2), Some(f));
            let alt = induced_maps_with(&conjugation_map(cat, x, y, t2), &records[x], &records[y], n_max, LiftChoice::Perturbed)?;
            if alt != base {
                return Err(Error::Construction(format!("action of morphism {f} depends on its token")));
            }
        }
        Ok(())
    });
    results.into_iter().collect()
}

/// `dim lim^0 H^n(-; F_p)` over `cat`.
pub fn stable_elements_over(cat: &GroupCategory, p: Prime, n: usize, ctx: &Context) -> Result<usize> {
    Ok(cohomology_over_orbit(cat, p, n, ctx)?.module.lim0_dim())
}

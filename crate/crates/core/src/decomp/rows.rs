use std::sync::Arc;

use super::limits::{digests, stable_elements, LimitsReport, StableElements};
use crate::category::{FiniteCategory, MorId};
use crate::cohomology::{cohomology_over_orbit, induced_map, Context};
use crate::error::{Error, Result};
use crate::fusion::{describe_chain, FusionSystem};
use crate::group::{Elem, GroupHom, Subgroup};
use crate::linalg::FpMatrix;
use crate::module::{higher_limits, CatModule};

/// A coefficient module built from stable elements of local subsystems.
#[derive(Clone, Debug)]
pub struct RowModule {
    pub module: CatModule,
    /// One entry per object: the Sylow subgroup of the local subsystem and
    /// its stable elements.
    pub local: Vec<(Subgroup, StableElements)>,
}

impl RowModule {
    fn cache_keys(&self) -> Vec<String> {
        let records: Vec<_> = self.local.iter().flat_map(|(_, s)| s.records.iter().cloned()).collect();
        digests(&records)
    }
}

/// Coordinates of `rows · a` in the row basis `target`.
fn restrict_stable(rows: &FpMatrix, a: &FpMatrix, target: &FpMatrix) -> Result<FpMatrix> {
    let image = rows.mul(a);
    let p = rows.prime();
    let coords = target
        .solve_many(&image.row_vecs())
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Construction("a conjugation map does not preserve stable elements".into()))?;
    Ok(FpMatrix::from_residue_rows(p, target.rows(), coords))
}

/// The least `h` in `fix` with `h x^-1 from x h^-1 ≤ into`, returned as `h x^-1`.
fn adjust_into(f: &FusionSystem, x: Elem, from: &Subgroup, into: &Subgroup, fix: &Subgroup) -> Result<Elem> {
    let g = f.group();
    let moved = g.conjugate(g.inv(x), from);
    fix.elements()
        .iter()
        .find(|&&h| g.conjugate(h, &moved).is_subgroup_of(into))
        .map(|&h| g.mul(h, g.inv(x)))
        .ok_or_else(|| Error::Construction(format!("{} is not Sylow in its local group", into.describe(g))))
}

fn local_system(f: &FusionSystem, normalizer: &Subgroup) -> Result<FusionSystem> {
    let sylow = normalizer.intersect(f.group(), f.sylow());
    FusionSystem::realized_over(f.group(), normalizer, f.prime(), &sylow)
}

fn assemble(base: Arc<FiniteCategory>, local: Vec<(Subgroup, StableElements)>, map: impl Fn(MorId) -> Result<FpMatrix>) -> Result<RowModule> {
    let p = local
        .first()
        .map(|(_, s)| s.basis.prime())
        .unwrap_or_else(|| crate::linalg::Prime::new(2).expect("2 is prime"));
    let dims = local.iter().map(|(_, s)| s.dim()).collect();
    let action = (0..base.num_morphisms()).map(map).collect::<Result<Vec<_>>>()?;
    let module = CatModule::new(base.clone(), p, dims, action)?;
    if let Err(v) = module.check() {
        return Err(Error::Construction(format!("coefficients over {} are not functorial: {v}", base.name())));
    }
    Ok(RowModule { module, local })
}

/// `E |-> H^n(C_F(E); F_p)` over `(F^e)^op`. A morphism `E -> E'` of `F^e`
/// with token `g` acts through `c_{h g^-1}: C_S(E') -> C_S(E)` with the
/// least `h ∈ C_A(E)` landing in `C_S(E)`.
pub fn centralizer_row_module(f: &FusionSystem, n: usize, ctx: &Context) -> Result<RowModule> {
    let fe = f.elementary_abelian_category()?;
    let cat = fe.category();
    let local = ctx.mode.try_map(fe.objects(), |e| -> Result<(Subgroup, StableElements)> {
        let cf = local_system(f, &f.centralizer_in_ambient(e))?;
        Ok((cf.sylow().clone(), stable_elements(&cf, n, ctx)?))
    })?;
    let g = f.group();
    let op = Arc::new(cat.opposite());
    assemble(op, local.clone(), |m| {
        let (x, y) = (cat.source(m), cat.target(m));
        let (cx, sx) = &local[x];
        let (cy, sy) = &local[y];
        let t = adjust_into(f, fe.token(m), cy, cx, &f.centralizer_in_ambient(fe.object(x)))?;
        let psi = GroupHom::conjugation(g, t, cy, cx);
        let a = induced_map(&psi, &sy.record, &sx.record, n)?;
        restrict_stable(&sx.basis, &a, &sy.basis)
    })
}

/// `lim^s` for `s <= s_max` of `H^n(C_F(-); F_p)` over `(F^e)^op`.
pub fn centralizer_row(f: &FusionSystem, n: usize, s_max: usize, ctx: &Context) -> Result<LimitsReport> {
    let row = centralizer_row_module(f, n, ctx)?;
    Ok(LimitsReport {
        category: format!("(F^e)^op of {}", f.name()),
        coefficients: format!("H^{n}(C_F(-);F_{})", f.prime().get()),
        group: f.group().name().to_string(),
        prime: f.prime().get(),
        collection: "elementary-abelian".into(),
        objects: row.module.base().num_objects(),
        bound: s_max,
        dims: higher_limits(&row.module, s_max),
        cache_keys: row.cache_keys(),
    })
}

/// Per-object values `lim^t H^n(-; F_p)` over `O^c(C_F(E))`, the `t`-th row
/// of the centralizer decomposition before taking limits over `F^e`.
/// Experimental: maps between these values are not constructed.
pub fn centralizer_column(f: &FusionSystem, n: usize, t: usize, ctx: &Context) -> Result<Vec<usize>> {
    let fe = f.elementary_abelian_category()?;
    fe.objects()
        .iter()
        .map(|e| {
            let cf = local_system(f, &f.centralizer_in_ambient(e))?;
            let h = cohomology_over_orbit(&cf.centric_orbit_category()?, f.prime(), n, ctx)?;
            Ok(higher_limits(&h.module, t)[t])
        })
        .collect()
}

/// `[σ] |-> H^n(N_F(σ); F_p)` over `s̄d(F^c)`. A face `σ -> τ` acts through
/// the canonical face conjugator `N_S(σ) -> N_S(τ)`.
pub fn normalizer_row_module(f: &FusionSystem, n: usize, ctx: &Context) -> Result<RowModule> {
    let sd = f.chain_category()?;
    let cat = sd.category();
    let objects: Vec<usize> = (0..cat.num_objects()).collect();
    let local = ctx.mode.try_map(&objects, |&x| -> Result<(Subgroup, StableElements)> {
        let nf = local_system(f, &sd.normalizer(x))?;
        if nf.sylow() != &sd.sylow_normalizer(x) {
            return Err(Error::Construction(format!(
                "{} is not fully normalized",
                describe_chain(f.group(), sd.representative(x))
            )));
        }
        Ok((nf.sylow().clone(), stable_elements(&nf, n, ctx)?))
    })?;
    let g = f.group();
    assemble(cat.clone(), local.clone(), |m| {
        let (x, y) = (cat.source(m), cat.target(m));
        let (nx, sx) = &local[x];
        let (ny, sy) = &local[y];
        let t = sd.face_conjugator(x, y)?;
        let psi = GroupHom::conjugation(g, t, nx, ny);
        let a = induced_map(&psi, &sx.record, &sy.record, n)?;
        restrict_stable(&sy.basis, &a, &sx.basis)
    })
}

/// `lim^s` for `s <= s_max` of `H^n(N_F(-); F_p)` over `s̄d(F^c)`.
pub fn normalizer_row(f: &FusionSystem, n: usize, s_max: usize, ctx: &Context) -> Result<LimitsReport> {
    let row = normalizer_row_module(f, n, ctx)?;
    Ok(LimitsReport {
        category: format!("sd(F^c) of {}", f.name()),
        coefficients: format!("H^{n}(N_F(-);F_{})", f.prime().get()),
        group: f.group().name().to_string(),
        prime: f.prime().get(),
        collection: "centric".into(),
        objects: row.module.base().num_objects(),
        bound: s_max,
        dims: higher_limits(&row.module, s_max),
        cache_keys: row.cache_keys(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{stable_elements, subgroup_limits};
    use crate::exec::ExecMode;
    use crate::fusion::{fusion_system, Preset};
    use crate::group::{builtin, FiniteGroup};
    use crate::linalg::Prime;

    fn setup(name: &str, p: u32) -> FusionSystem {
        let g: Arc<FiniteGroup> = Arc::new(builtin::by_name(name).unwrap());
        fusion_system(&g, Prime::new(p).unwrap()).unwrap()
    }

    #[test]
    fn s3_rows() {
        let f = setup("S3", 3);
        let ctx = Context::in_memory(ExecMode::Sequential);
        assert_eq!(centralizer_row(&f, 3, 2, &ctx).unwrap().dims, vec![1, 0, 0]);
        assert_eq!(normalizer_row(&f, 3, 2, &ctx).unwrap().dims, vec![1, 0, 0]);
        assert_eq!(normalizer_row(&f, 1, 2, &ctx).unwrap().dims, vec![0, 0, 0]);
    }

    #[test]
    fn degree_zero_rows_are_constant() {
        let f = setup("S4", 2);
        let ctx = Context::default();
        assert_eq!(centralizer_row(&f, 0, 2, &ctx).unwrap().dims, vec![1, 0, 0]);
        assert_eq!(normalizer_row(&f, 0, 2, &ctx).unwrap().dims, vec![1, 0, 0]);
    }

    #[test]
    fn s4_normalizer_row_matches_subgroup_limits() {
        let f = setup("S4", 2);
        let ctx = Context::default();
        let c = f.collection(&Preset::Centric).unwrap();
        for n in 0..=2 {
            let a = subgroup_limits(&f, &c, n, 2, &ctx).unwrap();
            let b = normalizer_row(&f, n, 2, &ctx).unwrap();
            assert_eq!(a.dims, b.dims, "n = {n}");
            assert_eq!(a.dims[0], stable_elements(&f, n, &ctx).unwrap().dim());
        }
    }

    #[test]
    fn single_object_centralizer_row_is_stable_elements() {
        // F^e of F_{C3}(S3) has the one object C3 with C_F(C3) = F_{C3}(C3).
        let f = setup("S3", 3);
        let ctx = Context::default();
        let c3 = f.sylow().clone();
        let cf = local_system(&f, &f.centralizer_in_ambient(&c3)).unwrap();
        for n in 0..=4 {
            let row = centralizer_row(&f, n, 0, &ctx).unwrap();
            let st = stable_elements(&cf, n, &ctx).unwrap().dim();
            let inv = centralizer_row_module(&f, n, &ctx).unwrap().module.lim0_dim();
            assert_eq!(row.dims[0], inv);
            assert!(row.dims[0] <= st);
        }
    }
}

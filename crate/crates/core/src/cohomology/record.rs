use std::sync::Arc;

use crate::category::{subgroup_category, CatFunctor, FiniteCategory};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, Subgroup};
use crate::linalg::{FpMatrix, Prime};
use crate::module::{cohomology_with, map_on_cohomology_with, CatModule, Cohomology, LiftChoice, ProjResolution};

use super::store::RecordKey;

/// `H^0..=H^d(P; F_p)` for a subgroup `P`, computed as higher limits over
/// the one-object category of `P`, with the resolution kept for induced maps.
#[derive(Clone, Debug)]
pub struct CohomologyRecord {
    key: RecordKey,
    subgroup: Subgroup,
    category: Arc<FiniteCategory>,
    constant: CatModule,
    cohomology: Cohomology,
}

impl CohomologyRecord {
    pub(crate) fn compute(group: &FiniteGroup, h: &Subgroup, p: Prime, d: usize) -> Self {
        let category = subgroup_category(group, h);
        let constant = CatModule::constant(&category, p);
        let res = ProjResolution::new(&constant, d + 1);
        Self::assemble(group, h, p, d, category, constant, res)
    }

    pub(crate) fn from_resolution(group: &FiniteGroup, h: &Subgroup, p: Prime, d: usize, levels: Vec<crate::module::FreeLevel>) -> Result<Self> {
        let category = subgroup_category(group, h);
        let constant = CatModule::constant(&category, p);
        let res = ProjResolution::from_levels(&constant, levels)?;
        if res.length() != d + 1 {
            return Err(Error::Cache(format!("stored resolution has {} terms, expected {}", res.length() + 1, d + 2)));
        }
        Ok(Self::assemble(group, h, p, d, category, constant, res))
    }

    fn assemble(
        group: &FiniteGroup,
        h: &Subgroup,
        p: Prime,
        d: usize,
        category: Arc<FiniteCategory>,
        constant: CatModule,
        res: ProjResolution,
    ) -> Self {
        let cohomology = cohomology_with(Arc::new(res), &constant, d);
        CohomologyRecord { key: RecordKey::new(group, h, p, d), subgroup: h.clone(), category, constant, cohomology }
    }

    pub fn key(&self) -> &RecordKey {
        &self.key
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn prime(&self) -> Prime {
        self.constant.prime()
    }

    pub fn degree_bound(&self) -> usize {
        self.cohomology.degree_bound()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.cohomology.dims()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.cohomology.bases[n].dim()
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn resolution(&self) -> &ProjResolution {
        &self.cohomology.resolution
    }

    pub fn cohomology(&self) -> &Cohomology {
        &self.cohomology
    }
}

/// `H^*(P; F_p)` through degree `d`, uncached.
pub fn group_cohomology(group: &FiniteGroup, h: &Subgroup, p: Prime, d: usize) -> CohomologyRecord {
    CohomologyRecord::compute(group, h, p, d)
}

/// The functor between one-object categories given by `phi`.
fn functor_of(phi: &GroupHom, source: &CohomologyRecord, target: &CohomologyRecord) -> CatFunctor {
    let q = phi.source();
    let p = phi.target();
    let morphisms = q
        .elements()
        .iter()
        .map(|&x| p.position(phi.apply(x)).expect("homomorphism lands in its target"))
        .collect();
    CatFunctor::new(source.category.clone(), target.category.clone(), vec![0], morphisms)
        .expect("one-object functor")
}

/// `phi^*: H^i(P) -> H^i(Q)` for `i = 0..=d`, given `phi: Q -> P` and the
/// records of `Q` (`source`) and `P` (`target`).
pub fn induced_maps_with(
    phi: &GroupHom,
    source: &CohomologyRecord,
    target: &CohomologyRecord,
    d: usize,
    choice: LiftChoice,
) -> Result<Vec<FpMatrix>> {
    if source.subgroup != *phi.source() || target.subgroup != *phi.target() {
        return Err(Error::Input("cohomology records do not match the homomorphism".into()));
    }
    if source.prime() != target.prime() {
        return Err(Error::InvalidPrime(target.prime().get()));
    }
    if d > source.degree_bound() || d > target.degree_bound() {
        return Err(Error::DegreeBound { degree: d, bound: source.degree_bound().min(target.degree_bound()) });
    }
    let functor = functor_of(phi, source, target);
    map_on_cohomology_with(&functor, &target.constant, &target.cohomology, &source.cohomology, d, choice)
}

/// `phi^*: H^n(P) -> H^n(Q)`.
pub fn induced_map(phi: &GroupHom, source: &CohomologyRecord, target: &CohomologyRecord, n: usize) -> Result<FpMatrix> {
    let mut maps = induced_maps_with(phi, source, target, n, LiftChoice::Canonical)?;
    Ok(maps.pop().expect("degree n is present"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{automorphisms, builtin};

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn cyclic_dims() {
        for (name, q) in [("C2", 2), ("C3", 3)] {
            let g = builtin::by_name(name).unwrap();
            assert_eq!(group_cohomology(&g, &g.whole(), p(q), 5).dims(), vec![1; 6]);
        }
    }

    #[test]
    fn dihedral_dims() {
        let g = builtin::by_name("D8").unwrap();
        assert_eq!(group_cohomology(&g, &g.whole(), p(2), 4).dims(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn identity_and_inner_maps() {
        let g = builtin::by_name("D8").unwrap();
        let s = g.whole();
        let rec = group_cohomology(&g, &s, p(2), 3);
        for u in g.elements() {
            let c = GroupHom::conjugation(&g, u, &s, &s);
            for (i, m) in induced_maps_with(&c, &rec, &rec, 3, LiftChoice::Canonical).unwrap().iter().enumerate() {
                assert_eq!(*m, FpMatrix::identity(p(2), i + 1));
            }
        }
    }

    #[test]
    fn inversion_on_c3() {
        let g = builtin::by_name("C3").unwrap();
        let s = g.whole();
        let rec = group_cohomology(&g, &s, p(3), 4);
        let b = g.generators()[0];
        let inv = GroupHom::from_generator_images(&g, &s, &s, &[b], &[g.mul(b, b)]).unwrap();
        let maps = induced_maps_with(&inv, &rec, &rec, 4, LiftChoice::Canonical).unwrap();
        // Inversion acts by (-1)^k on H^{2k} and H^{2k-1}.
        let scalars: Vec<u8> = maps.iter().map(|m| m.get(0, 0)).collect();
        assert_eq!(scalars, vec![1, 2, 2, 1, 1]);
        let other = induced_maps_with(&inv, &rec, &rec, 4, LiftChoice::Perturbed).unwrap();
        assert_eq!(maps, other);
    }

    #[test]
    fn automorphisms_compose_contravariantly() {
        let g = builtin::by_name("D8").unwrap();
        let s = g.whole();
        let rec = group_cohomology(&g, &s, p(2), 2);
        let auts = automorphisms(&g, &s).unwrap();
        for a in &auts {
            for b in &auts {
                // (a ∘ b)^* = b^* ∘ a^*, i.e. the row-vector matrix A·B.
                let ab = b.then(a);
                let lhs = induced_maps_with(&ab, &rec, &rec, 2, LiftChoice::Canonical).unwrap();
                let ma = induced_maps_with(a, &rec, &rec, 2, LiftChoice::Canonical).unwrap();
                let mb = induced_maps_with(b, &rec, &rec, 2, LiftChoice::Canonical).unwrap();
                for i in 0..=2 {
                    assert_eq!(lhs[i], ma[i].mul(&mb[i]));
                }
            }
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let g = builtin::by_name("C2").unwrap();
        let rec = group_cohomology(&g, &g.whole(), p(2), 2);
        let id = GroupHom::identity(&g.whole());
        assert!(matches!(induced_map(&id, &rec, &rec, 3), Err(Error::DegreeBound { .. })));
    }
}

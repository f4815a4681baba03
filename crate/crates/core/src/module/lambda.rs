use std::sync::Arc;

use super::catmodule::CatModule;
use super::ext::higher_limits;
use crate::category::{GroupCategory, GroupCategoryKind, Layout};
use crate::error::{Error, Result};
use crate::group::{p_subgroup_classes, Collection, Elem, FiniteGroup};
use crate::linalg::{FpMatrix, Prime};

/// A representation of a finite group on `F_p^n`, one matrix per element
/// (row vectors, `rho(gh) = rho(g) rho(h)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRep {
    p: Prime,
    dim: usize,
    matrices: Vec<FpMatrix>,
}

impl GroupRep {
    pub fn trivial(group: &FiniteGroup, p: Prime, dim: usize) -> Self {
        GroupRep { p, dim, matrices: vec![FpMatrix::identity(p, dim); group.order()] }
    }

    /// Extends matrices given on the generators, checking that they define
    /// a homomorphism.
    pub fn from_generator_images(group: &FiniteGroup, p: Prime, images: &[FpMatrix]) -> Result<Self> {
        let gens = group.generators();
        if images.len() != gens.len() {
            return Err(Error::Input(format!("{} generator images for {} generators", images.len(), gens.len())));
        }
        let dim = images.first().map_or(0, |m| m.rows());
        if images.iter().any(|m| m.rows() != dim || m.cols() != dim || m.prime() != p) {
            return Err(Error::Dimension("generator images must be square of one size".into()));
        }
        let mut matrices: Vec<Option<FpMatrix>> = vec![None; group.order()];
        matrices[group.identity() as usize] = Some(FpMatrix::identity(p, dim));
        let mut queue = vec![group.identity()];
        while let Some(g) = queue.pop() {
            let mg = matrices[g as usize].clone().expect("queued elements are assigned");
            for (&s, ms) in gens.iter().zip(images) {
                let h = group.mul(g, s);
                let mh = mg.mul(ms);
                match &matrices[h as usize] {
                    Some(old) if *old != mh => {
                        return Err(Error::Input("generator images do not respect the group relations".into()))
                    }
                    Some(_) => {}
                    None => {
                        matrices[h as usize] = Some(mh);
                        queue.push(h);
                    }
                }
            }
        }
        Ok(GroupRep { p, dim, matrices: matrices.into_iter().map(|m| m.expect("generators generate")).collect() })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: Elem) -> &FpMatrix {
        &self.matrices[g as usize]
    }
}

/// The orbit category of all p-subgroups of `gamma` (skeleton layout).
pub fn p_orbit_category(gamma: &Arc<FiniteGroup>, p: Prime) -> Result<GroupCategory> {
    let classes = p_subgroup_classes(gamma, p)?;
    let collection = Collection::from_classes(&gamma.whole(), classes);
    GroupCategory::build(gamma, &collection, GroupCategoryKind::Orbit, Layout::Skeleton)
}

/// `Λ^0..=Λ^d(Γ; N)`: higher limits over the p-orbit category of the
/// module equal to `N` at the trivial subgroup and zero elsewhere.
pub fn lambda_functor(gamma: &Arc<FiniteGroup>, n: &GroupRep, d: usize) -> Result<Vec<usize>> {
    let p = n.prime();
    let orbit = p_orbit_category(gamma, p)?;
    let (x, _) = orbit.locate(&gamma.trivial()).expect("the trivial subgroup is a p-subgroup");
    let cat = orbit.category();
    let rho: Vec<FpMatrix> = cat.hom(x, x).iter().map(|&f| n.matrix(orbit.token(f)).clone()).collect();
    let module = CatModule::atomic(cat, p, x, &rho)?;
    Ok(higher_limits(&module, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn coprime_group_has_only_invariants() {
        let c2 = Arc::new(builtin::by_name("C2").unwrap());
        let n = GroupRep::trivial(&c2, p(3), 1);
        assert_eq!(lambda_functor(&c2, &n, 3).unwrap(), vec![1, 0, 0, 0]);
        let sign = GroupRep::from_generator_images(&c2, p(3), &[FpMatrix::from_rows(p(3), 1, &[[-1]]).unwrap()]).unwrap();
        assert_eq!(lambda_functor(&c2, &sign, 3).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn normal_p_subgroup_kills_everything() {
        for (name, q) in [("C3", 3), ("C2", 2), ("S3", 3), ("A4", 2), ("D8", 2)] {
            let g = Arc::new(builtin::by_name(name).unwrap());
            let n = GroupRep::trivial(&g, p(q), 1);
            assert_eq!(lambda_functor(&g, &n, 3).unwrap(), vec![0; 4], "{name}");
        }
    }

    #[test]
    fn generator_images_must_satisfy_relations() {
        let c2 = builtin::by_name("C2").unwrap();
        let swap = FpMatrix::from_rows(p(3), 2, &[[0, 1], [1, 0]]).unwrap();
        let rep = GroupRep::from_generator_images(&c2, p(3), std::slice::from_ref(&swap)).unwrap();
        assert_eq!(rep.matrix(c2.generators()[0]), &swap);
        let order_four = FpMatrix::from_rows(p(5), 1, &[[2]]).unwrap();
        assert!(GroupRep::from_generator_images(&c2, p(5), &[order_four]).is_err());
    }
}

use std::fmt;
use std::sync::Arc;

use super::finite::{FiniteCategory, MorId, ObjId};
use crate::error::{Error, Result};

/// A functor between finite categories, given on objects and morphisms.
#[derive(Clone)]
pub struct CatFunctor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    object_map: Vec<ObjId>,
    morphism_map: Vec<MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    Endpoints { morphism: MorId },
    Identity { object: ObjId },
    Composition { g: MorId, f: MorId },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::Endpoints { morphism } => write!(f, "morphism {morphism} lands between the wrong objects"),
            FunctorViolation::Identity { object } => write!(f, "identity of object {object} is not preserved"),
            FunctorViolation::Composition { g, f: m } => write!(f, "composite {g} ∘ {m} is not preserved"),
        }
    }
}

impl CatFunctor {
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Result<Self> {
        if object_map.len() != source.num_objects() || morphism_map.len() != source.num_morphisms() {
            return Err(Error::Construction("functor maps do not cover the source".into()));
        }
        if object_map.iter().any(|&y| y >= target.num_objects())
            || morphism_map.iter().any(|&g| g >= target.num_morphisms())
        {
            return Err(Error::Construction("functor maps leave the target".into()));
        }
        Ok(CatFunctor { source, target, object_map, morphism_map })
    }

    pub fn identity(cat: &Arc<FiniteCategory>) -> Self {
        CatFunctor {
            source: cat.clone(),
            target: cat.clone(),
            object_map: (0..cat.num_objects()).collect(),
            morphism_map: (0..cat.num_morphisms()).collect(),
        }
    }

    /// The unique functor out of the empty category.
    pub fn from_empty(target: &Arc<FiniteCategory>) -> Self {
        CatFunctor {
            source: Arc::new(FiniteCategory::empty("∅")),
            target: target.clone(),
            object_map: Vec::new(),
            morphism_map: Vec::new(),
        }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn object(&self, x: ObjId) -> ObjId {
        self.object_map[x]
    }

    pub fn morphism(&self, f: MorId) -> MorId {
        self.morphism_map[f]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[MorId] {
        &self.morphism_map
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &CatFunctor) -> CatFunctor {
        assert!(Arc::ptr_eq(&self.target, &then.source) || *self.target == *then.source);
        CatFunctor {
            source: self.source.clone(),
            target: then.target.clone(),
            object_map: self.object_map.iter().map(|&x| then.object(x)).collect(),
            morphism_map: self.morphism_map.iter().map(|&f| then.morphism(f)).collect(),
        }
    }

    /// Exhaustive check that endpoints, identities and composites are preserved.
    pub fn check(&self) -> std::result::Result<(), FunctorViolation> {
        let (c, d) = (&self.source, &self.target);
        for f in 0..c.num_morphisms() {
            let g = self.morphism_map[f];
            if d.source(g) != self.object(c.source(f)) || d.target(g) != self.object(c.target(f)) {
                return Err(FunctorViolation::Endpoints { morphism: f });
            }
        }
        for x in 0..c.num_objects() {
            if self.morphism(c.identity(x)) != d.identity(self.object(x)) {
                return Err(FunctorViolation::Identity { object: x });
            }
        }
        for f in 0..c.num_morphisms() {
            for &g in c.outgoing(c.target(f)) {
                if self.morphism(c.compose(g, f)) != d.compose(self.morphism(g), self.morphism(f)) {
                    return Err(FunctorViolation::Composition { g, f });
                }
            }
        }
        Ok(())
    }

    /// Full and faithful: bijective on every hom-set.
    pub fn is_fully_faithful(&self) -> bool {
        let (c, d) = (&self.source, &self.target);
        for x in 0..c.num_objects() {
            for y in 0..c.num_objects() {
                let mut images: Vec<MorId> = c.hom(x, y).iter().map(|&f| self.morphism(f)).collect();
                images.sort_unstable();
                images.dedup();
                if images.len() != c.hom(x, y).len()
                    || images.len() != d.hom(self.object(x), self.object(y)).len()
                {
                    return false;
                }
            }
        }
        true
    }

    /// Every target object is isomorphic to an image object.
    pub fn is_essentially_surjective(&self) -> bool {
        let d = &self.target;
        (0..d.num_objects()).all(|y| {
            self.object_map
                .iter()
                .any(|&fx| d.hom(fx, y).iter().any(|&m| d.is_iso(m)))
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_fully_faithful() && self.is_essentially_surjective()
    }
}

impl fmt::Debug for CatFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CatFunctor({} -> {})", self.source.name(), self.target.name())
    }
}

/// A skeleton with the two functors witnessing the equivalence.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub category: Arc<FiniteCategory>,
    /// Skeleton into the original category.
    pub inclusion: CatFunctor,
    /// Original category onto the skeleton, via chosen isomorphisms to
    /// the class representatives.
    pub retraction: CatFunctor,
}

/// One object per isomorphism class: the least object index of each class.
pub fn skeleton(cat: &Arc<FiniteCategory>) -> Skeleton {
    let classes = cat.isomorphism_classes();
    let reps: Vec<ObjId> = classes.iter().map(|c| c[0]).collect();
    let (sub, to_old) = cat.full_subcategory(&format!("sk({})", cat.name()), &reps);
    let sub = Arc::new(sub);
    let inclusion = CatFunctor::new(sub.clone(), cat.clone(), reps.clone(), to_old.clone())
        .expect("inclusion of a full subcategory");
    let mut class_of = vec![0; cat.num_objects()];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    // theta[x]: x -> rep(x), the first isomorphism in the hom-set.
    let theta: Vec<MorId> = (0..cat.num_objects())
        .map(|x| {
            let r = reps[class_of[x]];
            *cat.hom(x, r).iter().find(|&&f| cat.is_iso(f)).expect("isomorphic to its representative")
        })
        .collect();
    let mut old_to_new = vec![usize::MAX; cat.num_morphisms()];
    for (new, &old) in to_old.iter().enumerate() {
        old_to_new[old] = new;
    }
    let morphism_map = (0..cat.num_morphisms())
        .map(|f| {
            let (x, y) = (cat.source(f), cat.target(f));
            let back = cat.inverse(theta[x]).expect("theta is invertible");
            old_to_new[cat.compose(theta[y], cat.compose(f, back))]
        })
        .collect();
    let retraction = CatFunctor::new(cat.clone(), sub.clone(), class_of, morphism_map)
        .expect("retraction onto the skeleton");
    Skeleton { category: sub, inclusion, retraction }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::finite::{one_object_category, poset_category, CategoryBuilder};

    /// Two isomorphic objects with Aut = C2 each: the groupoid C2 x (pair).
    fn doubled_c2() -> Arc<FiniteCategory> {
        // morphism (i, j, s): i -> j with sign s in C2.
        let mut b = CategoryBuilder::new("pair");
        b.add_object("a");
        b.add_object("b");
        let mut ids = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                for s in 0..2 {
                    ids.push((i, j, s));
                    b.add_morphism(i, j, format!("{i}{j}{s}"));
                }
            }
        }
        let find = |t: (usize, usize, usize)| ids.iter().position(|&u| u == t).unwrap();
        b.set_identity(0, find((0, 0, 0)));
        b.set_identity(1, find((1, 1, 0)));
        let ids2 = ids.clone();
        Arc::new(
            b.build(|g, f| {
                let (i, _, s) = ids2[f];
                let (_, k, t) = ids2[g];
                find((i, k, (s + t) % 2))
            })
            .unwrap(),
        )
    }

    #[test]
    fn skeleton_of_groupoid() {
        let c = doubled_c2();
        assert!(c.check().is_ok());
        let sk = skeleton(&c);
        assert_eq!(sk.category.num_objects(), 1);
        assert_eq!(sk.category.num_morphisms(), 2);
        assert!(sk.inclusion.check().is_ok());
        assert!(sk.retraction.check().is_ok());
        assert!(sk.inclusion.is_equivalence());
        assert!(sk.retraction.is_equivalence());
    }

    #[test]
    fn skeleton_of_skeletal_is_identity() {
        let p = Arc::new(poset_category("P", vec!["a".into(), "b".into()], |i, j| i <= j).unwrap());
        let sk = skeleton(&p);
        assert_eq!(sk.inclusion.object_map(), &[0, 1]);
        assert_eq!(sk.category.composition_table(), p.composition_table());
    }

    #[test]
    fn functor_checker_finds_broken_composite() {
        let c2 = Arc::new(one_object_category("C2", vec!["e".into(), "t".into()], 0, |a, b| a ^ b));
        let good = CatFunctor::new(c2.clone(), c2.clone(), vec![0], vec![0, 1]).unwrap();
        assert!(good.check().is_ok());
        let trivial = CatFunctor::new(c2.clone(), c2.clone(), vec![0], vec![0, 0]).unwrap();
        assert!(trivial.check().is_ok());
        let bad = CatFunctor::new(c2.clone(), c2.clone(), vec![0], vec![1, 1]).unwrap();
        assert_eq!(bad.check(), Err(FunctorViolation::Identity { object: 0 }));
    }

    #[test]
    fn functor_from_empty() {
        let c2 = Arc::new(one_object_category("C2", vec!["e".into(), "t".into()], 0, |a, b| a ^ b));
        let f = CatFunctor::from_empty(&c2);
        assert!(f.check().is_ok());
        assert!(f.is_fully_faithful());
        assert!(!f.is_essentially_surjective());
    }
}

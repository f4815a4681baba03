use super::finite::FiniteGroup;
use super::lattice::{conjugacy_class_under, SubgroupClass};
use super::subgroup::Subgroup;
use crate::error::{Error, Result};
use crate::linalg::Prime;

/// A set of subgroups closed under conjugation by an ambient subgroup,
/// kept as classes sorted by order and then representative tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collection {
    ambient: Subgroup,
    classes: Vec<SubgroupClass>,
}

impl Collection {
    pub fn empty(ambient: &Subgroup) -> Self {
        Collection { ambient: ambient.clone(), classes: Vec::new() }
    }

    /// Checks that `members` is closed under conjugation by `ambient`.
    pub fn from_subgroups(group: &FiniteGroup, ambient: &Subgroup, members: Vec<Subgroup>) -> Result<Self> {
        let mut members = members;
        members.sort();
        members.dedup();
        let mut classes: Vec<SubgroupClass> = Vec::new();
        for h in &members {
            if !h.is_subgroup_of(ambient) {
                return Err(Error::Input(format!("{} does not lie in the ambient group", h.describe(group))));
            }
            if classes.iter().any(|c| c.contains(h)) {
                continue;
            }
            let class = conjugacy_class_under(group, ambient, h);
            if let Some(missing) = class.iter().find(|k| members.binary_search(k).is_err()) {
                return Err(Error::NotConjugationClosed(format!(
                    "{} is conjugate to {} but missing",
                    missing.describe(group),
                    h.describe(group)
                )));
            }
            classes.push(SubgroupClass { representative: class[0].clone(), members: class });
        }
        Ok(Self::from_classes(ambient, classes))
    }

    /// The conjugation closure of `generators`.
    pub fn closure_of(group: &FiniteGroup, ambient: &Subgroup, generators: &[Subgroup]) -> Result<Self> {
        let mut members = Vec::new();
        for h in generators {
            if !h.is_subgroup_of(ambient) {
                return Err(Error::Input(format!("{} does not lie in the ambient group", h.describe(group))));
            }
            members.extend(conjugacy_class_under(group, ambient, h));
        }
        Self::from_subgroups(group, ambient, members)
    }

    pub(crate) fn from_classes(ambient: &Subgroup, mut classes: Vec<SubgroupClass>) -> Self {
        classes.sort_by(|a, b| {
            (a.order(), a.representative.elements()).cmp(&(b.order(), b.representative.elements()))
        });
        Collection { ambient: ambient.clone(), classes }
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.ambient
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representatives(&self) -> Vec<Subgroup> {
        self.classes.iter().map(|c| c.representative.clone()).collect()
    }

    /// Every member, sorted by order then tuple.
    pub fn members(&self) -> Vec<Subgroup> {
        let mut all: Vec<Subgroup> = self.classes.iter().flat_map(|c| c.members.iter().cloned()).collect();
        all.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        all
    }

    pub fn contains(&self, h: &Subgroup) -> bool {
        self.classes.iter().any(|c| c.order() == h.order() && c.contains(h))
    }

    /// The class containing `h`, by index.
    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.classes.iter().position(|c| c.order() == h.order() && c.contains(h))
    }

    /// `C|_H`: members contained in `h`, classed by `h`-conjugacy.
    pub fn restrict_to(&self, group: &FiniteGroup, h: &Subgroup) -> Collection {
        let inside: Vec<Subgroup> = self.members().into_iter().filter(|k| k.is_subgroup_of(h)).collect();
        Collection::from_subgroups(group, h, inside).expect("restriction of a closed collection is closed")
    }

    /// Every p-subgroup of the ambient group containing a member is a member.
    /// `candidates` should list every subgroup of the ambient group (or at
    /// least every p-subgroup).
    pub fn is_overgroup_closed(&self, p: Prime, candidates: &[Subgroup]) -> bool {
        self.members().iter().all(|k| {
            candidates
                .iter()
                .filter(|q| p.is_power(q.order()) && k.is_subgroup_of(q) && q.is_subgroup_of(&self.ambient))
                .all(|q| self.contains(q))
        })
    }

    /// `PQ` is a member whenever it is a subgroup, for members `P`, `Q`.
    pub fn is_product_closed(&self, group: &FiniteGroup) -> bool {
        let members = self.members();
        members.iter().all(|a| {
            members
                .iter()
                .all(|b| group.subgroup_product(a, b).is_none_or(|ab| self.contains(&ab)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{all_subgroups, builtin};

    #[test]
    fn rejects_non_closed_sets() {
        let s3 = builtin::symmetric(3).unwrap();
        let t = s3.generate(&[s3.find(&[1, 0, 2]).unwrap()]);
        let err = Collection::from_subgroups(&s3, &s3.whole(), vec![t.clone()]).unwrap_err();
        assert!(matches!(err, Error::NotConjugationClosed(_)));
        let closed = Collection::closure_of(&s3, &s3.whole(), &[t]).unwrap();
        assert_eq!(closed.classes().len(), 1);
        assert_eq!(closed.members().len(), 3);
    }

    #[test]
    fn restriction_reclasses_under_the_subgroup() {
        let s4 = builtin::symmetric(4).unwrap();
        let p = Prime::new(2).unwrap();
        let subs = all_subgroups(&s4).unwrap();
        let twos: Vec<Subgroup> = subs.iter().filter(|h| p.is_power(h.order()) && !h.is_trivial()).cloned().collect();
        let c = Collection::from_subgroups(&s4, &s4.whole(), twos.clone()).unwrap();
        assert_eq!(c.classes().len(), 6);
        assert!(c.is_overgroup_closed(p, &subs));
        let d8 = s4.sylow(p);
        let r = c.restrict_to(&s4, &d8);
        // D8 has 9 nontrivial subgroups in 7 classes.
        assert_eq!(r.members().len(), 9);
        assert_eq!(r.classes().len(), 7);
    }
}

use std::collections::HashSet;

use super::finite::{Elem, FiniteGroup};
use super::subgroup::{ElemSet, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::Prime;

/// Default cap on subgroup-generation tests during lattice enumeration.
pub const DEFAULT_MAX_TESTS: usize = 100_000;

/// A conjugacy class of subgroups with its canonical (least tuple)
/// representative. Members are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }

    pub fn contains(&self, h: &Subgroup) -> bool {
        self.members.binary_search(h).is_ok()
    }
}

/// One generator for each cyclic subgroup of `group` (the least element
/// generating it), in increasing order.
pub fn cyclic_generators(group: &FiniteGroup) -> Vec<Elem> {
    let mut seen = ElemSet::new(group.order());
    let mut out = Vec::new();
    for g in group.elements() {
        if seen.contains(g) {
            continue;
        }
        let order = group.element_order(g);
        let mut x = g;
        for k in 1..=order {
            if gcd(k, order) == 1 {
                seen.insert(x);
            }
            x = group.mul(x, g);
        }
        out.push(g);
    }
    out
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All conjugates of `h`, sorted.
pub fn conjugacy_class(group: &FiniteGroup, h: &Subgroup) -> Vec<Subgroup> {
    conjugacy_class_under(group, &group.whole(), h)
}

/// All conjugates `x h x^-1` for `x` in `over`, sorted.
pub fn conjugacy_class_under(group: &FiniteGroup, over: &Subgroup, h: &Subgroup) -> Vec<Subgroup> {
    let normalizer = group.normalizer(h);
    let mut seen = ElemSet::new(group.order());
    let mut out = Vec::new();
    for &g in over.elements() {
        if seen.contains(g) {
            continue;
        }
        for &n in normalizer.elements() {
            seen.insert(group.mul(g, n));
        }
        out.push(group.conjugate(g, h));
    }
    out.sort();
    out
}

/// Conjugacy classes of the subgroups satisfying `keep`, where `keep` must be
/// inherited by subgroups and invariant under conjugation (for instance
/// "is a p-group" or "always true").
///
/// Classes come sorted by order, then by representative tuple.
pub fn classes_where(
    group: &FiniteGroup,
    keep: impl Fn(&FiniteGroup, &Subgroup) -> bool,
    max_tests: usize,
) -> Result<Vec<SubgroupClass>> {
    let cyclic: Vec<Elem> = cyclic_generators(group)
        .into_iter()
        .filter(|&x| keep(group, &group.generate(&[x])))
        .collect();
    let mut reps: Vec<Subgroup> = vec![group.trivial()];
    let mut known: HashSet<Subgroup> = HashSet::from([group.trivial()]);
    let mut tests = 0usize;
    let mut i = 0;
    while i < reps.len() {
        let h = reps[i].clone();
        for &x in &cyclic {
            if h.contains(x) {
                continue;
            }
            tests += 1;
            if tests > max_tests {
                return Err(Error::SizeBound { what: "subgroup lattice tests", limit: max_tests });
            }
            let k = group.extend(&h, x);
            if known.contains(&k) || !keep(group, &k) {
                continue;
            }
            let class = conjugacy_class(group, &k);
            let rep = class[0].clone();
            known.extend(class);
            reps.push(rep);
        }
        i += 1;
    }
    let mut classes: Vec<SubgroupClass> = reps
        .into_iter()
        .map(|r| {
            let members = conjugacy_class(group, &r);
            SubgroupClass { representative: members[0].clone(), members }
        })
        .collect();
    classes.sort_by(|a, b| {
        (a.order(), a.representative.elements()).cmp(&(b.order(), b.representative.elements()))
    });
    Ok(classes)
}

/// Every subgroup class of `group`, then filtered by `filter` applied to
/// the representative.
pub fn subgroups_up_to_conjugacy(
    group: &FiniteGroup,
    filter: impl Fn(&Subgroup) -> bool,
) -> Result<Vec<SubgroupClass>> {
    Ok(classes_where(group, |_, _| true, DEFAULT_MAX_TESTS)?
        .into_iter()
        .filter(|c| filter(&c.representative))
        .collect())
}

/// Classes of p-subgroups, trivial subgroup included.
pub fn p_subgroup_classes(group: &FiniteGroup, p: Prime) -> Result<Vec<SubgroupClass>> {
    classes_where(group, |_, h| p.is_power(h.order()), DEFAULT_MAX_TESTS)
}

/// Every subgroup of `group`, sorted by order then tuple.
pub fn all_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let mut out: Vec<Subgroup> =
        subgroups_up_to_conjugacy(group, |_| true)?.into_iter().flat_map(|c| c.members).collect();
    out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    Ok(out)
}

/// Every subgroup of `h` (as subgroups of the ambient group), sorted by
/// order then tuple. Enumerated directly, without conjugacy.
pub fn subgroups_of(group: &FiniteGroup, h: &Subgroup) -> Vec<Subgroup> {
    let cyclic: Vec<Elem> = cyclic_generators(group).into_iter().filter(|&x| h.contains(x)).collect();
    let mut all = vec![group.trivial()];
    let mut known: HashSet<Subgroup> = HashSet::from([group.trivial()]);
    let mut i = 0;
    while i < all.len() {
        let k = all[i].clone();
        for &x in &cyclic {
            if !k.contains(x) {
                let bigger = group.extend(&k, x);
                if known.insert(bigger.clone()) {
                    all.push(bigger);
                }
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    #[test]
    fn s3_has_four_classes() {
        let g = builtin::symmetric(3).unwrap();
        let classes = subgroups_up_to_conjugacy(&g, |_| true).unwrap();
        let orders: Vec<usize> = classes.iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(classes[1].members.len(), 3);
    }

    #[test]
    fn prime_cyclic_has_two_classes() {
        for p in [2, 3, 5, 7] {
            let g = builtin::cyclic(p).unwrap();
            assert_eq!(subgroups_up_to_conjugacy(&g, |_| true).unwrap().len(), 2);
        }
    }

    #[test]
    fn d8_has_eight_classes() {
        let g = builtin::by_name("D8").unwrap();
        let classes = subgroups_up_to_conjugacy(&g, |_| true).unwrap();
        assert_eq!(classes.len(), 8);
        let orders: Vec<usize> = classes.iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn s4_lattice_matches_known_count() {
        let g = builtin::symmetric(4).unwrap();
        assert_eq!(all_subgroups(&g).unwrap().len(), 30);
        assert_eq!(subgroups_up_to_conjugacy(&g, |_| true).unwrap().len(), 11);
        let p = Prime::new(2).unwrap();
        // 2-subgroup classes: 1, two C2, C4, two V, D8.
        assert_eq!(p_subgroup_classes(&g, p).unwrap().len(), 7);
    }

    #[test]
    fn subgroups_of_d8_inside_s4() {
        let g = builtin::symmetric(4).unwrap();
        let s = g.sylow(Prime::new(2).unwrap());
        assert_eq!(subgroups_of(&g, &s).len(), 10);
    }

    #[test]
    fn test_cap_is_enforced() {
        let g = builtin::symmetric(4).unwrap();
        let err = classes_where(&g, |_, _| true, 3).unwrap_err();
        assert!(matches!(err, Error::SizeBound { .. }));
    }
}

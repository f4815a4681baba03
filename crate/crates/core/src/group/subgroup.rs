use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::finite::{Elem, FiniteGroup};
use crate::error::{Error, Result};

/// Membership bitset over the elements of one group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(order: usize) -> Self {
        ElemSet { words: vec![0; order.div_ceil(64)] }
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        let e = e as usize;
        self.words[e / 64] >> (e % 64) & 1 == 1
    }

    /// Returns true when `e` was newly inserted.
    #[inline]
    pub fn insert(&mut self, e: Elem) -> bool {
        let e = e as usize;
        let bit = 1u64 << (e % 64);
        let fresh = self.words[e / 64] & bit == 0;
        self.words[e / 64] |= bit;
        fresh
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

/// A subgroup, identified by its sorted element-index tuple.
///
/// Equality, ordering and hashing look only at the element tuple; the
/// generating set is bookkeeping.
#[derive(Clone)]
pub struct Subgroup {
    elements: Vec<Elem>,
    mask: ElemSet,
    gens: Vec<Elem>,
}

impl Subgroup {
    pub(crate) fn from_parts(elements: Vec<Elem>, mask: ElemSet, gens: Vec<Elem>) -> Self {
        Subgroup { elements, mask, gens }
    }

    /// Wraps a sorted element list known to be closed.
    pub(crate) fn from_sorted(group: &FiniteGroup, elements: Vec<Elem>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let mut mask = ElemSet::new(group.order());
        for &e in &elements {
            mask.insert(e);
        }
        // Greedy generating set in element order.
        let mut gens = Vec::new();
        let mut span = ElemSet::new(group.order());
        span.insert(0);
        let mut span_elems = vec![0];
        for &e in &elements {
            if span.contains(e) {
                continue;
            }
            gens.push(e);
            let mut i = 0;
            while i < span_elems.len() {
                let a = span_elems[i];
                for &s in &gens {
                    let b = group.mul(a, s);
                    if span.insert(b) {
                        span_elems.push(b);
                    }
                }
                i += 1;
            }
        }
        Subgroup { elements, mask, gens }
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn mask(&self) -> &ElemSet {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.mask.contains(e)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.mask.is_subset(&other.mask)
    }

    pub fn is_proper_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() < other.order() && self.mask.is_subset(&other.mask)
    }

    pub fn intersect(&self, group: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let elems = self.elements.iter().copied().filter(|&e| other.contains(e)).collect();
        Subgroup::from_sorted(group, elems)
    }

    /// Position of `e` in the sorted element list.
    pub fn position(&self, e: Elem) -> Option<usize> {
        self.elements.binary_search(&e).ok()
    }

    pub fn is_abelian(&self, group: &FiniteGroup) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| group.mul(a, b) == group.mul(b, a)))
    }

    pub fn is_elementary_abelian(&self, group: &FiniteGroup, p: u32) -> bool {
        self.is_abelian(group) && self.elements.iter().all(|&e| e == 0 || group.element_order(e) == p)
    }

    pub fn is_normal_in(&self, group: &FiniteGroup, ambient: &Subgroup) -> bool {
        ambient
            .gens()
            .iter()
            .all(|&g| self.gens.iter().all(|&x| self.contains(group.conj(g, x))))
    }

    /// A compact label: order and generators in cycle notation.
    pub fn describe(&self, group: &FiniteGroup) -> String {
        if self.is_trivial() {
            return "1".to_string();
        }
        let gens: Vec<String> = self.gens.iter().map(|&g| group.cycle_string(g)).collect();
        format!("<{}>#{}", gens.join(","), self.order())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements.cmp(&other.elements)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

/// A strictly increasing chain `P_0 < P_1 < ... < P_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupChain {
    members: Vec<Subgroup>,
}

impl SubgroupChain {
    pub fn new(members: Vec<Subgroup>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Input("a chain needs at least one member".into()));
        }
        if let Some(w) = members.windows(2).find(|w| !w[0].is_proper_subgroup_of(&w[1])) {
            return Err(Error::Input(format!("{:?} is not properly contained in {:?}", w[0], w[1])));
        }
        Ok(SubgroupChain { members })
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn top(&self) -> &Subgroup {
        self.members.last().expect("chains are nonempty")
    }

    pub fn conjugate(&self, group: &FiniteGroup, g: Elem) -> SubgroupChain {
        SubgroupChain { members: self.members.iter().map(|m| group.conjugate(g, m)).collect() }
    }

    /// Every nonempty subchain, by member index subsets in increasing
    /// bitmask order.
    pub fn subchains(&self) -> Vec<SubgroupChain> {
        let n = self.members.len();
        (1u32..(1 << n))
            .map(|mask| SubgroupChain {
                members: (0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.members[i].clone()).collect(),
            })
            .collect()
    }
}

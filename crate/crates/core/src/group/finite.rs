use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::subgroup::{ElemSet, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::Prime;

/// Index of an element in the canonical element list of its group.
pub type Elem = u32;

/// Default cap on the order of a materialized group.
pub const DEFAULT_MAX_ORDER: usize = 2048;

/// A finite permutation group with every element and the full
/// multiplication table materialized.
///
/// Elements are ordered lexicographically by their image tuples, so the
/// identity is always element 0. Products compose right to left:
/// `(a * b)(i) = a(b(i))`.
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Elem>,
    perms: Vec<Vec<u32>>,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    element_orders: Vec<u32>,
}

fn validate_perm(degree: usize, images: &[u32]) -> Result<()> {
    if images.len() != degree {
        return Err(Error::InvalidPermutation(format!(
            "expected {degree} images, got {}",
            images.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &x in images {
        let x = x as usize;
        if x >= degree || seen[x] {
            return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
        }
        seen[x] = true;
    }
    Ok(())
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&i| a[i as usize]).collect()
}

impl FiniteGroup {
    /// Generates the group from 0-based permutation images.
    pub fn from_permutations(name: &str, degree: usize, generators: &[Vec<u32>]) -> Result<Self> {
        Self::from_permutations_bounded(name, degree, generators, DEFAULT_MAX_ORDER)
    }

    pub fn from_permutations_bounded(
        name: &str,
        degree: usize,
        generators: &[Vec<u32>],
        max_order: usize,
    ) -> Result<Self> {
        for g in generators {
            validate_perm(degree, g)?;
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut perms = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let prod = compose(&perms[i], g);
                if !index.contains_key(&prod) {
                    if perms.len() == max_order {
                        return Err(Error::SizeBound { what: "group order", limit: max_order });
                    }
                    index.insert(prod.clone(), perms.len());
                    queue.push_back(perms.len());
                    perms.push(prod);
                }
            }
        }
        perms.sort();
        let index: HashMap<&[u32], Elem> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i as Elem)).collect();
        let n = perms.len();
        let mut table = vec![0 as Elem; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[compose(&perms[a], &perms[b]).as_slice()];
            }
        }
        let mut inverse = vec![0 as Elem; n];
        for a in 0..n {
            let b = (0..n).find(|&b| table[a * n + b] == 0).expect("inverse exists");
            inverse[a] = b as Elem;
        }
        let mut element_orders = vec![1u32; n];
        for (a, ord) in element_orders.iter_mut().enumerate() {
            let mut x = a;
            while x != 0 {
                x = table[x * n + a] as usize;
                *ord += 1;
            }
        }
        let gens = generators.iter().map(|g| index[g.as_slice()]).collect();
        Ok(FiniteGroup {
            name: name.to_string(),
            degree,
            generators: gens,
            perms: perms.clone(),
            table,
            inverse,
            element_orders,
        })
    }

    pub(crate) fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        0..self.order() as Elem
    }

    pub fn permutation(&self, g: Elem) -> &[u32] {
        &self.perms[g as usize]
    }

    pub fn find(&self, perm: &[u32]) -> Option<Elem> {
        self.perms.binary_search_by(|p| p.as_slice().cmp(perm)).ok().map(|i| i as Elem)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        self.element_orders[a as usize]
    }

    pub fn pow(&self, a: Elem, k: u32) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self, (0..self.order() as Elem).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(self, vec![0])
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[Elem]) -> Subgroup {
        let mut mask = ElemSet::new(self.order());
        mask.insert(0);
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let a = elems[i];
            for &s in gens {
                let b = self.mul(a, s);
                if mask.insert(b) {
                    elems.push(b);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Subgroup::from_parts(elems, mask, gens.to_vec())
    }

    /// `<h, x>` for a subgroup `h`.
    pub fn extend(&self, h: &Subgroup, x: Elem) -> Subgroup {
        if h.contains(x) {
            return h.clone();
        }
        let mut gens = h.gens().to_vec();
        gens.push(x);
        self.generate(&gens)
    }

    pub fn is_subgroup(&self, elems: &[Elem]) -> bool {
        if elems.is_empty() {
            return false;
        }
        let mut mask = ElemSet::new(self.order());
        for &e in elems {
            mask.insert(e);
        }
        mask.contains(0)
            && elems.iter().all(|&a| mask.contains(self.inv(a)))
            && elems.iter().all(|&a| elems.iter().all(|&b| mask.contains(self.mul(a, b))))
    }

    /// Validates `elems` as a subgroup.
    pub fn subgroup(&self, mut elems: Vec<Elem>) -> Result<Subgroup> {
        elems.sort_unstable();
        elems.dedup();
        if elems.iter().any(|&e| e as usize >= self.order()) || !self.is_subgroup(&elems) {
            return Err(Error::NotClosed(format!("{elems:?} is not a subgroup of {}", self.name)));
        }
        Ok(Subgroup::from_sorted(self, elems))
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, g: Elem, h: &Subgroup) -> Subgroup {
        let mut elems: Vec<Elem> = h.elements().iter().map(|&x| self.conj(g, x)).collect();
        elems.sort_unstable();
        Subgroup::from_sorted(self, elems)
    }

    /// The transporter `N_G(H, K) = { g : g H g^-1 <= K }`, in increasing order.
    pub fn transporter(&self, h: &Subgroup, k: &Subgroup) -> Vec<Elem> {
        if h.order() > k.order() {
            return Vec::new();
        }
        let gens = h.gens();
        self.elements().filter(|&g| gens.iter().all(|&x| k.contains(self.conj(g, x)))).collect()
    }

    /// Some element conjugating `h` onto `k`, the least such index.
    pub fn conjugator(&self, h: &Subgroup, k: &Subgroup) -> Option<Elem> {
        if h.order() != k.order() {
            return None;
        }
        let gens = h.gens();
        self.elements().find(|&g| gens.iter().all(|&x| k.contains(self.conj(g, x))))
    }

    pub fn are_conjugate(&self, h: &Subgroup, k: &Subgroup) -> bool {
        self.conjugator(h, k).is_some()
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let gens = h.gens();
        let elems = self.elements().filter(|&g| gens.iter().all(|&x| self.conj(g, x) == x)).collect();
        Subgroup::from_sorted(self, elems)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let gens = h.gens();
        let elems = self.elements().filter(|&g| gens.iter().all(|&x| h.contains(self.conj(g, x)))).collect();
        Subgroup::from_sorted(self, elems)
    }

    pub fn center(&self, h: &Subgroup) -> Subgroup {
        h.intersect(self, &self.centralizer(h))
    }

    pub fn stabilizers(&self, h: &Subgroup) -> Stabilizers {
        let centralizer = self.centralizer(h);
        let normalizer = self.normalizer(h);
        let center = h.intersect(self, &centralizer);
        Stabilizers { centralizer, normalizer, center }
    }

    /// Intersection of the normalizers of every member of `chain`.
    pub fn chain_normalizer(&self, chain: &[Subgroup]) -> Subgroup {
        let mut elems: Vec<Elem> = self.elements().collect();
        for member in chain {
            let gens = member.gens();
            elems.retain(|&g| gens.iter().all(|&x| member.contains(self.conj(g, x))));
        }
        Subgroup::from_sorted(self, elems)
    }

    /// A Sylow p-subgroup: the one with the least sorted element tuple.
    pub fn sylow(&self, p: Prime) -> Subgroup {
        self.sylow_of(&self.whole(), p)
    }

    /// A Sylow p-subgroup of `h`, least sorted element tuple among all of them.
    pub fn sylow_of(&self, h: &Subgroup, p: Prime) -> Subgroup {
        let target = p.part_of(h.order());
        let mut s = self.trivial();
        while s.order() < target {
            let n = self.normalizer(&s).intersect(self, h);
            let x = n
                .elements()
                .iter()
                .copied()
                .find(|&x| !s.contains(x) && p.is_power(self.element_order(x) as usize))
                .expect("a p-element outside a non-Sylow p-subgroup of its normalizer");
            s = self.extend(&s, x);
        }
        h.elements()
            .iter()
            .map(|&g| self.conjugate(g, &s))
            .min()
            .expect("h is nonempty")
    }

    pub fn is_p_group(&self, h: &Subgroup, p: Prime) -> bool {
        p.is_power(h.order())
    }

    /// Orbits of `A x B` acting on `xs` by `(a, b) . x = a x b^-1`; one
    /// representative (the least index) per orbit, in increasing order.
    pub fn double_cosets(&self, a: &Subgroup, xs: &[Elem], b: &Subgroup) -> Result<Vec<Elem>> {
        Ok(self.double_coset_partition(a, xs, b)?.into_iter().map(|o| o[0]).collect())
    }

    /// The full orbit partition behind `double_cosets`; each orbit sorted.
    pub fn double_coset_partition(&self, a: &Subgroup, xs: &[Elem], b: &Subgroup) -> Result<Vec<Vec<Elem>>> {
        let mut in_x = ElemSet::new(self.order());
        for &x in xs {
            in_x.insert(x);
        }
        let mut seen = ElemSet::new(self.order());
        let mut sorted = xs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut orbits = Vec::new();
        for &x in &sorted {
            if seen.contains(x) {
                continue;
            }
            let mut orbit = Vec::new();
            for &u in a.elements() {
                let ux = self.mul(u, x);
                for &v in b.elements() {
                    let y = self.mul(ux, v);
                    if !in_x.contains(y) {
                        return Err(Error::NotClosed(format!(
                            "element set is not closed under the two-sided action ({} -> {})",
                            x, y
                        )));
                    }
                    if seen.insert(y) {
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// `P Q` when it is a subgroup.
    pub fn subgroup_product(&self, p: &Subgroup, q: &Subgroup) -> Option<Subgroup> {
        let mut mask = ElemSet::new(self.order());
        let mut elems = Vec::new();
        for &x in p.elements() {
            for &y in q.elements() {
                let z = self.mul(x, y);
                if mask.insert(z) {
                    elems.push(z);
                }
            }
        }
        elems.sort_unstable();
        let closed = elems.iter().all(|&a| elems.iter().all(|&b| mask.contains(self.mul(a, b))));
        closed.then(|| Subgroup::from_sorted(self, elems))
    }

    /// Cycle notation of an element, 1-based.
    pub fn cycle_string(&self, g: Elem) -> String {
        let perm = self.permutation(g);
        let mut seen = vec![false; self.degree];
        let mut out = String::new();
        for start in 0..self.degree {
            if seen[start] || perm[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    out.push(',');
                }
                out.push_str(&(i + 1).to_string());
                first = false;
                i = perm[i] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, degree {}, order {})", self.name, self.degree, self.order())
    }
}

/// Centralizer, normalizer and center of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizers {
    pub centralizer: Subgroup,
    pub normalizer: Subgroup,
    pub center: Subgroup,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    fn perm_elem(g: &FiniteGroup, one_based: &[u32]) -> Elem {
        let p: Vec<u32> = one_based.iter().map(|x| x - 1).collect();
        g.find(&p).unwrap()
    }

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn make_group_orders() {
        let s3 = FiniteGroup::from_permutations("S3", 3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(s3.order(), 6);
        let s4 = FiniteGroup::from_permutations("S4", 4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.identity(), 0);
        assert_eq!(s4.permutation(0), &[0, 1, 2, 3]);
        assert!(FiniteGroup::from_permutations("bad", 3, &[vec![0, 0, 1]]).is_err());
        let err = FiniteGroup::from_permutations_bounded("S4", 4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], 10);
        assert!(matches!(err, Err(Error::SizeBound { .. })));
    }

    #[test]
    fn element_order_is_lexicographic() {
        let s3 = builtin::symmetric(3).unwrap();
        let perms: Vec<&[u32]> = s3.elements().map(|g| s3.permutation(g)).collect();
        assert!(perms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn sylow_examples() {
        let s4 = builtin::symmetric(4).unwrap();
        assert_eq!(s4.sylow(p(2)).order(), 8);
        let s3 = builtin::symmetric(3).unwrap();
        let c3 = s3.sylow(p(3));
        assert_eq!(c3, s3.generate(&[perm_elem(&s3, &[2, 3, 1])]));
        let c2 = builtin::cyclic(2).unwrap();
        assert!(c2.sylow(p(3)).is_trivial());
    }

    #[test]
    fn sylow_is_least_among_sylows() {
        let s4 = builtin::symmetric(4).unwrap();
        let s = s4.sylow(p(2));
        for g in s4.elements() {
            assert!(s <= s4.conjugate(g, &s));
        }
    }

    #[test]
    fn transporter_examples() {
        let s3 = builtin::symmetric(3).unwrap();
        let c3 = s3.sylow(p(3));
        assert_eq!(s3.transporter(&c3, &c3).len(), 6);
        let c2 = s3.generate(&[perm_elem(&s3, &[2, 1, 3])]);
        assert!(s3.transporter(&c3, &c2).is_empty());

        let s4 = builtin::symmetric(4).unwrap();
        let h = s4.generate(&[perm_elem(&s4, &[2, 1, 3, 4])]);
        let k = s4.sylow(p(2));
        let scan: Vec<Elem> = s4
            .elements()
            .filter(|&g| h.elements().iter().all(|&x| k.contains(s4.conj(g, x))))
            .collect();
        assert_eq!(s4.transporter(&h, &k), scan);
    }

    #[test]
    fn transporter_is_a_two_sided_set() {
        let s4 = builtin::symmetric(4).unwrap();
        let h = s4.generate(&[perm_elem(&s4, &[2, 1, 4, 3])]);
        let k = s4.sylow(p(2));
        let t = s4.transporter(&h, &k);
        let c = s4.centralizer(&h);
        for &g in &t {
            for &x in k.elements() {
                assert!(t.contains(&s4.mul(x, g)));
            }
            for &y in c.elements() {
                assert!(t.contains(&s4.mul(g, y)));
            }
        }
    }

    #[test]
    fn transporter_conjugation_equivariance() {
        let s4 = builtin::symmetric(4).unwrap();
        let h = s4.generate(&[perm_elem(&s4, &[2, 1, 3, 4])]);
        let k = s4.sylow(p(2));
        let t = s4.transporter(&h, &k);
        for g in s4.elements() {
            let lhs = s4.transporter(&s4.conjugate(g, &h), &s4.conjugate(g, &k));
            let mut rhs: Vec<Elem> = t.iter().map(|&x| s4.conj(g, x)).collect();
            rhs.sort_unstable();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn stabilizer_examples() {
        let s3 = builtin::symmetric(3).unwrap();
        let c3 = s3.sylow(p(3));
        let st = s3.stabilizers(&c3);
        assert_eq!(st.centralizer, c3);
        assert_eq!(st.normalizer, s3.whole());

        let s4 = builtin::symmetric(4).unwrap();
        let v = s4.generate(&[perm_elem(&s4, &[2, 1, 4, 3]), perm_elem(&s4, &[3, 4, 1, 2])]);
        let st = s4.stabilizers(&v);
        let scan_c: Vec<Elem> =
            s4.elements().filter(|&g| v.elements().iter().all(|&x| s4.conj(g, x) == x)).collect();
        let scan_n: Vec<Elem> =
            s4.elements().filter(|&g| v.elements().iter().all(|&x| v.contains(s4.conj(g, x)))).collect();
        assert_eq!(st.centralizer.elements(), scan_c.as_slice());
        assert_eq!(st.normalizer.elements(), scan_n.as_slice());
        assert_eq!(st.centralizer, v);
        assert_eq!(st.normalizer.order(), 24);

        let whole = s4.whole();
        let st = s4.stabilizers(&whole);
        assert!(st.centralizer.is_trivial());
        assert_eq!(st.normalizer, whole);
        assert!(st.center.is_trivial());
    }

    #[test]
    fn double_coset_examples() {
        let s3 = builtin::symmetric(3).unwrap();
        let c3 = s3.sylow(p(3));
        let all: Vec<Elem> = s3.elements().collect();
        assert_eq!(s3.double_cosets(&c3, &all, &c3).unwrap().len(), 2);
        assert_eq!(s3.double_cosets(&s3.trivial(), &all, &s3.trivial()).unwrap().len(), 6);
        assert_eq!(s3.double_cosets(&s3.whole(), &all, &s3.trivial()).unwrap(), vec![0]);
        assert!(matches!(s3.double_cosets(&c3, &[0], &s3.trivial()), Err(Error::NotClosed(_))));
    }

    #[test]
    fn double_cosets_ignore_input_order() {
        let s4 = builtin::symmetric(4).unwrap();
        let k = s4.sylow(p(2));
        let h = s4.generate(&[perm_elem(&s4, &[2, 1, 3, 4])]);
        let mut t = s4.transporter(&h, &k);
        let c = s4.centralizer(&h);
        let forward = s4.double_cosets(&k, &t, &c).unwrap();
        t.reverse();
        assert_eq!(s4.double_cosets(&k, &t, &c).unwrap(), forward);
    }

    #[test]
    fn product_examples() {
        let s4 = builtin::symmetric(4).unwrap();
        let a = s4.generate(&[perm_elem(&s4, &[2, 1, 3, 4])]);
        let b = s4.generate(&[perm_elem(&s4, &[1, 2, 4, 3])]);
        assert_eq!(s4.subgroup_product(&a, &b).unwrap().order(), 4);
        let s = s4.sylow(p(2));
        let inside = s.intersect(&s4, &s4.generate(&[s.gens()[0]]));
        assert_eq!(s4.subgroup_product(&inside, &s).unwrap(), s);

        let s3 = builtin::symmetric(3).unwrap();
        let a = s3.generate(&[perm_elem(&s3, &[2, 1, 3])]);
        let b = s3.generate(&[perm_elem(&s3, &[3, 2, 1])]);
        assert!(s3.subgroup_product(&a, &b).is_none());
    }

    #[test]
    fn chain_normalizer_of_v_in_d8() {
        let s4 = builtin::symmetric(4).unwrap();
        let d8 = s4.sylow(p(2));
        let v = s4.generate(&[perm_elem(&s4, &[2, 1, 4, 3]), perm_elem(&s4, &[3, 4, 1, 2])]);
        assert!(v.is_subgroup_of(&d8));
        let n = s4.chain_normalizer(&[v.clone(), d8.clone()]);
        let scan: Vec<Elem> = s4
            .elements()
            .filter(|&g| {
                [&v, &d8].iter().all(|m| m.elements().iter().all(|&x| m.contains(s4.conj(g, x))))
            })
            .collect();
        assert_eq!(n.elements(), scan.as_slice());
        assert_eq!(n, d8);
    }

    #[test]
    fn cycle_notation() {
        let s4 = builtin::symmetric(4).unwrap();
        assert_eq!(s4.cycle_string(0), "()");
        assert_eq!(s4.cycle_string(perm_elem(&s4, &[2, 3, 1, 4])), "(1,2,3)");
    }
}

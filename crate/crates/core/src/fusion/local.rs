use std::collections::HashSet;

use super::system::FusionSystem;
use crate::error::{Error, Result};
use crate::group::{automorphisms, k_normalizer, Elem, GroupHom, Subgroup};

/// `N_F^K(Q)` together with the data it was built from.
#[derive(Clone, Debug)]
pub struct LocalFusion {
    /// The fully K-normalized conjugate actually used.
    pub subgroup: Subgroup,
    /// The transported automorphism group `K`.
    pub automorphisms: Vec<GroupHom>,
    /// Element of the ambient group taking the requested `Q` to `subgroup`.
    pub conjugator: Elem,
    /// `N_A^K(Q)`.
    pub normalizer: Subgroup,
    /// `N_S^K(Q)`, a Sylow p-subgroup of `normalizer`.
    pub sylow: Subgroup,
    pub system: FusionSystem,
}

impl FusionSystem {
    /// `N_A^K(Q)` inside the ambient group.
    pub fn k_normalizer_in_ambient(&self, q: &Subgroup, k: &[GroupHom]) -> Result<Subgroup> {
        Ok(k_normalizer(self.group(), q, k)?.intersect(self.group(), self.ambient()))
    }

    /// `N_S^K(Q)`.
    pub fn k_normalizer_in_s(&self, q: &Subgroup, k: &[GroupHom]) -> Result<Subgroup> {
        Ok(k_normalizer(self.group(), q, k)?.intersect(self.group(), self.sylow()))
    }

    /// All F-conjugates `(a Q a^-1, c_a K c_a^-1)` inside S, one per value
    /// of the conjugated `N_A^K(Q)`, as `(a, |N_S^K|)` in order of `a`.
    fn k_conjugates(&self, q: &Subgroup, k: &[GroupHom]) -> Result<Vec<(Elem, Subgroup, Subgroup)>> {
        let g = self.group();
        let n = self.k_normalizer_in_ambient(q, k)?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &a in self.ambient().elements() {
            let qa = g.conjugate(a, q);
            if !qa.is_subgroup_of(self.sylow()) {
                continue;
            }
            let na = g.conjugate(a, &n);
            if seen.insert((qa.elements().to_vec(), na.elements().to_vec())) {
                out.push((a, qa, na));
            }
        }
        Ok(out)
    }

    /// Order-maximality of `|N_S^K(Q)|` over the F-conjugates of `(Q, K)`.
    pub fn is_fully_k_normalized(&self, q: &Subgroup, k: &[GroupHom]) -> Result<bool> {
        let own = self.k_normalizer_in_s(q, k)?.order();
        let s = self.sylow();
        Ok(self
            .k_conjugates(q, k)?
            .iter()
            .all(|(_, _, na)| na.intersect(self.group(), s).order() <= own))
    }

    /// The conjugate of `(Q, K)` maximizing `|N_S^K|`; ties go to the least
    /// subgroup tuple, then the least normalizer tuple, then the least element.
    pub fn fully_k_normalized_conjugate(&self, q: &Subgroup, k: &[GroupHom]) -> Result<(Elem, Subgroup, Vec<GroupHom>)> {
        let g = self.group();
        let s = self.sylow();
        let (a, qa, _) = self
            .k_conjugates(q, k)?
            .into_iter()
            .map(|(a, qa, na)| (na.intersect(g, s).order(), a, qa, na))
            .min_by(|x, y| {
                y.0.cmp(&x.0)
                    .then_with(|| x.2.elements().cmp(y.2.elements()))
                    .then_with(|| x.3.elements().cmp(y.3.elements()))
                    .then_with(|| x.1.cmp(&y.1))
            })
            .map(|(_, a, qa, na)| (a, qa, na))
            .ok_or_else(|| Error::Input(format!("{} is not conjugate into S", q.describe(g))))?;
        let ca = GroupHom::conjugation(g, a, q, &qa);
        let back = ca.inverse_on_image(g).with_target(q);
        let ka = k.iter().map(|x| back.then(x).then(&ca)).collect();
        Ok((a, qa, ka))
    }

    /// `N_F^K(Q) = F_{N_S^K(Q)}(N_A^K(Q))`, after replacing `(Q, K)` by its
    /// fully K-normalized conjugate. `K` must be a group of automorphisms of `Q`.
    pub fn local_fusion(&self, q: &Subgroup, k: &[GroupHom]) -> Result<LocalFusion> {
        let (a, qa, ka) = self.fully_k_normalized_conjugate(q, k)?;
        let normalizer = self.k_normalizer_in_ambient(&qa, &ka)?;
        let sylow = normalizer.intersect(self.group(), self.sylow());
        let system = FusionSystem::realized_over(self.group(), &normalizer, self.prime(), &sylow)?;
        Ok(LocalFusion { subgroup: qa, automorphisms: ka, conjugator: a, normalizer, sylow, system })
    }

    /// `C_F(Q)`, the case `K = 1`.
    pub fn centralizer_system(&self, q: &Subgroup) -> Result<LocalFusion> {
        self.local_fusion(q, &[GroupHom::identity(q)])
    }

    /// `N_F(Q)`, the case `K = Aut(Q)`.
    pub fn normalizer_system(&self, q: &Subgroup) -> Result<LocalFusion> {
        self.local_fusion(q, &automorphisms(self.group(), q)?)
    }

    /// `N_F(σ)` for a chain `σ` of subgroups of S: the fusion system of the
    /// chain normalizer, on a fully normalized conjugate of the chain.
    pub fn chain_normalizer_system(&self, chain: &[Subgroup]) -> Result<(Vec<Subgroup>, FusionSystem)> {
        let g = self.group();
        let s = self.sylow();
        let best = self
            .ambient()
            .elements()
            .iter()
            .filter_map(|&a| {
                let c: Vec<Subgroup> = chain.iter().map(|h| g.conjugate(a, h)).collect();
                c.iter().all(|h| h.is_subgroup_of(s)).then_some(c)
            })
            .map(|c| (g.chain_normalizer(&c).intersect(g, s).order(), c))
            .min_by(|x, y| {
                y.0.cmp(&x.0).then_with(|| {
                    let ex = x.1.iter().map(|h| h.elements());
                    let ey = y.1.iter().map(|h| h.elements());
                    ex.cmp(ey)
                })
            })
            .map(|x| x.1)
            .ok_or_else(|| Error::Input("chain is not conjugate into S".into()))?;
        let normalizer = g.chain_normalizer(&best).intersect(g, self.ambient());
        let sylow = normalizer.intersect(g, s);
        let system = FusionSystem::realized_over(g, &normalizer, self.prime(), &sylow)?;
        Ok((best, system))
    }

    /// Whether every F-morphism out of a subgroup of S extends to one that
    /// centralizes `q`: `N_A(P, S) ⊆ C_A(Q) C_A(P)` for all `P ≤ S`.
    pub fn is_central(&self, q: &Subgroup) -> bool {
        self.local_test(q, |a| self.centralizer_in_ambient(a))
    }

    /// `N_F(Q) = F`: `Q ⊴ S` and `N_A(P, S) ⊆ N_A(Q) C_A(P)` for all `P ≤ S`.
    pub fn is_normal(&self, q: &Subgroup) -> bool {
        q.is_normal_in(self.group(), self.sylow()) && self.local_test(q, |a| self.normalizer_in_ambient(a))
    }

    fn local_test(&self, q: &Subgroup, local: impl Fn(&Subgroup) -> Subgroup) -> bool {
        let g = self.group();
        let l = local(q);
        self.subgroups().iter().all(|p| {
            let c = self.centralizer_in_ambient(p);
            let lc = product_set(g, &l, &c);
            g.transporter(p, self.sylow()).into_iter().filter(|&x| self.ambient().contains(x)).all(|x| lc.contains(&x))
        })
    }

    /// `(Z(F), O_p(F))`: the products of all central and of all normal
    /// subgroups of S.
    pub fn center_and_core(&self) -> (Subgroup, Subgroup) {
        let g = self.group();
        let mut z = g.trivial();
        let mut o = g.trivial();
        for h in self.subgroups() {
            if h.is_subgroup_of(&z) || self.is_central(h) {
                z = g.generate(&[z.gens(), h.gens()].concat());
            }
            if h.is_subgroup_of(&o) || self.is_normal(h) {
                o = g.generate(&[o.gens(), h.gens()].concat());
            }
        }
        (z, o)
    }
}

fn product_set(g: &crate::group::FiniteGroup, a: &Subgroup, b: &Subgroup) -> HashSet<Elem> {
    a.elements().iter().flat_map(|&x| b.elements().iter().map(move |&y| g.mul(x, y))).collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fusion::fusion_system;
    use crate::group::{builtin, FiniteGroup};
    use crate::linalg::Prime;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn group(name: &str) -> Arc<FiniteGroup> {
        Arc::new(builtin::by_name(name).unwrap())
    }

    #[test]
    fn centralizer_of_center_is_everything() {
        let f = fusion_system(&group("S4"), p(2)).unwrap();
        let z = f.group().center(f.sylow());
        let c = f.centralizer_system(&z).unwrap();
        assert_eq!(&c.sylow, f.sylow());
        assert_eq!(c.subgroup, z);
    }

    #[test]
    fn centralizer_of_normal_klein_group() {
        let f = fusion_system(&group("S4"), p(2)).unwrap();
        let g = f.group();
        let v = f.class(f.centric_radical_classes()[0]).representative.clone();
        let c = f.centralizer_system(&v).unwrap();
        assert_eq!(c.sylow, v);
        assert_eq!(c.normalizer, v);
        assert_eq!(c.system.classes().len(), 5);
        assert!(c.system.subgroups().iter().all(|h| c.system.aut(h).len() == 1));
        let n = f.normalizer_system(&v).unwrap();
        assert_eq!(n.normalizer, g.whole());
    }

    #[test]
    fn normalizer_of_top_chain() {
        let f = fusion_system(&group("S4"), p(2)).unwrap();
        let (chain, n) = f.chain_normalizer_system(&[f.sylow().clone()]).unwrap();
        assert_eq!(chain, vec![f.sylow().clone()]);
        assert_eq!(n.sylow(), f.sylow());
        assert!(n.is_saturated().is_saturated());
    }

    #[test]
    fn replaces_by_fully_normalized_conjugate() {
        let g = group("S4");
        let f = fusion_system(&g, p(2)).unwrap();
        // A non-central involution of D8 has |N_S| = 4, the central one 8.
        let s = f.sylow();
        let order_two: Vec<&Subgroup> = f.subgroups().iter().filter(|h| h.order() == 2).collect();
        for q in order_two {
            let aut = automorphisms(&g, q).unwrap();
            let l = f.local_fusion(q, &aut).unwrap();
            assert!(f.is_fully_k_normalized(&l.subgroup, &l.automorphisms).unwrap());
            assert_eq!(l.sylow.order(), p(2).part_of(l.normalizer.order()));
            assert!(l.sylow.is_subgroup_of(s));
        }
    }

    #[test]
    fn center_and_core_examples() {
        let f = fusion_system(&group("S3"), p(3)).unwrap();
        let (z, o) = f.center_and_core();
        assert!(z.is_trivial());
        assert_eq!(&o, f.sylow());
        let d8 = group("D8");
        let f = fusion_system(&d8, p(2)).unwrap();
        let (z, o) = f.center_and_core();
        assert_eq!(z, d8.center(&d8.whole()));
        assert_eq!(o, d8.whole());
        let f = fusion_system(&group("S4"), p(2)).unwrap();
        let (z, o) = f.center_and_core();
        assert!(z.is_trivial());
        assert_eq!(o.order(), 4);
        for c in f.centric_radical_classes() {
            assert!(f.class(c).members.iter().all(|m| o.is_subgroup_of(m)));
        }
    }
}

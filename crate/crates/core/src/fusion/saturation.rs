use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::system::{ClassFlags, FusionSystem};
use crate::exec::ExecMode;
use crate::group::{Elem, GroupHom, Subgroup};

/// The axiom a failing instance violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// `Hom_S(P, Q) ⊆ Hom_F(P, Q)`.
    ContainsInner,
    /// Inverses of isomorphisms are morphisms.
    ClosedUnderInverses,
    /// Fully normalized implies fully centralized.
    FullyCentralized,
    /// Fully normalized implies fully automized.
    FullyAutomized,
    /// Fully centralized implies receptive.
    Receptive,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::ContainsInner => "contains inner maps",
            Axiom::ClosedUnderInverses => "closed under inverses",
            Axiom::FullyCentralized => "fully normalized => fully centralized",
            Axiom::FullyAutomized => "fully normalized => fully automized",
            Axiom::Receptive => "fully centralized => receptive",
        };
        f.write_str(s)
    }
}

/// A counterexample to one of the axioms.
#[derive(Clone, Debug)]
pub struct Witness {
    pub axiom: Axiom,
    pub subgroup: Subgroup,
    /// The morphism that fails to extend or is missing, when there is one.
    pub morphism: Option<GroupHom>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SaturationReport {
    /// Number of subgroups of S examined.
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl SaturationReport {
    pub fn is_saturated(&self) -> bool {
        self.witness.is_none()
    }
}

impl FusionSystem {
    /// `N_φ` for an isomorphism `φ: P -> φ(P)` in F.
    pub fn n_phi(&self, phi: &GroupHom) -> Subgroup {
        let g = self.group();
        let (p, q) = (phi.source(), phi.target());
        let inv = phi.inverse_on_image(g);
        let gens = q.gens();
        // The maps c_y on φ(P) for y in N_S(φ(P)).
        let inner: HashSet<Vec<Elem>> = self
            .normalizer_in_s(q)
            .elements()
            .iter()
            .map(|&y| gens.iter().map(|&z| g.conj(y, z)).collect())
            .collect();
        let elems = self
            .normalizer_in_s(p)
            .elements()
            .iter()
            .copied()
            .filter(|&x| {
                let images: Vec<Elem> = gens.iter().map(|&z| phi.apply(g.conj(x, inv.apply(z)))).collect();
                inner.contains(&images)
            })
            .collect();
        g.subgroup(elems).expect("N_phi is a subgroup")
    }

    /// An F-morphism `N_φ -> S` restricting to `φ`, if one exists.
    /// The search runs over the stored morphisms out of `N_φ`.
    pub fn extend_to_n_phi(&self, phi: &GroupHom) -> Option<GroupHom> {
        let n = self.n_phi(phi);
        let gens = phi.source().gens();
        self.hom(&n, self.sylow()).into_iter().find(|psi| gens.iter().all(|&x| psi.apply(x) == phi.apply(x)))
    }

    /// The first isomorphism into `q` that does not extend to its `N_φ`.
    pub fn receptive_failure(&self, q: &Subgroup) -> Option<GroupHom> {
        let c = self.class_index(q)?;
        for p in &self.class(c).members {
            for phi in self.hom(p, q) {
                if self.extend_to_n_phi(&phi).is_none() {
                    return Some(phi);
                }
            }
        }
        None
    }

    pub fn is_receptive(&self, q: &Subgroup) -> bool {
        self.receptive_failure(q).is_none()
    }

    /// Checks that F is a fusion system on the stored data: inner maps are
    /// present and inverses of isomorphisms are morphisms.
    pub fn fusion_axiom_failure(&self) -> Option<Witness> {
        let g = self.group();
        let s = self.sylow();
        for p in self.subgroups() {
            for q in self.subgroups() {
                if p.order() > q.order() {
                    continue;
                }
                let stored: HashSet<Vec<Elem>> = self.hom(p, q).iter().map(|h| h.images().to_vec()).collect();
                for x in g.transporter(p, q).into_iter().filter(|&x| s.contains(x)) {
                    let inner = GroupHom::conjugation(g, x, p, q);
                    if !stored.contains(inner.images()) {
                        return Some(Witness {
                            axiom: Axiom::ContainsInner,
                            subgroup: p.clone(),
                            detail: format!("c_{} is missing", g.cycle_string(x)),
                            morphism: Some(inner),
                        });
                    }
                }
                if p.order() == q.order() {
                    let back: HashSet<Vec<Elem>> = self.hom(q, p).iter().map(|h| h.images().to_vec()).collect();
                    for phi in self.hom(p, q) {
                        let inv = phi.inverse_on_image(g).with_target(p);
                        if !back.contains(inv.images()) {
                            return Some(Witness {
                                axiom: Axiom::ClosedUnderInverses,
                                subgroup: p.clone(),
                                detail: "the inverse of an isomorphism is missing".into(),
                                morphism: Some(phi),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// Exhaustive check of both saturation axioms over every subgroup of S,
    /// after the fusion system axioms themselves.
    pub fn is_saturated(&self) -> SaturationReport {
        let checked = self.subgroups().len();
        if let Some(w) = self.fusion_axiom_failure() {
            return SaturationReport { checked, witness: Some(w) };
        }
        for h in self.subgroups() {
            if let Some(w) = self.saturation_failure_at(h) {
                return SaturationReport { checked, witness: Some(w) };
            }
        }
        SaturationReport { checked, witness: None }
    }

    fn saturation_failure_at(&self, h: &Subgroup) -> Option<Witness> {
        let centralized = self.is_fully_centralized(h);
        if self.is_fully_normalized(h) {
            if !centralized {
                return Some(Witness {
                    axiom: Axiom::FullyCentralized,
                    subgroup: h.clone(),
                    morphism: None,
                    detail: format!("|C_S| = {} is not maximal in the class", self.centralizer_in_s(h).order()),
                });
            }
            if !self.is_fully_automized(h) {
                return Some(Witness {
                    axiom: Axiom::FullyAutomized,
                    subgroup: h.clone(),
                    morphism: None,
                    detail: format!("|Aut_S| = {}, |Aut_F| = {}", self.aut_s(h).len(), self.aut(h).len()),
                });
            }
        }
        if centralized {
            if let Some(phi) = self.receptive_failure(h) {
                let n = self.n_phi(&phi);
                return Some(Witness {
                    axiom: Axiom::Receptive,
                    subgroup: h.clone(),
                    detail: format!("a map from {} does not extend to N_phi of order {}", phi.source().describe(self.group()), n.order()),
                    morphism: Some(phi),
                });
            }
        }
        None
    }

    /// Flags of every class, evaluated at its representative.
    pub fn classify(&self, mode: ExecMode) -> Vec<ClassFlags> {
        mode.map_range(self.classes().len(), |c| self.flags_of(&self.class(c).representative))
    }

    pub fn flags_of(&self, h: &Subgroup) -> ClassFlags {
        let centric = self.is_centric(h);
        let radical = self.is_radical(h);
        ClassFlags {
            fully_normalized: self.is_fully_normalized(h),
            fully_centralized: self.is_fully_centralized(h),
            fully_automized: self.is_fully_automized(h),
            receptive: self.is_receptive(h),
            centric,
            radical,
            centric_radical: centric && radical,
        }
    }
}

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{GroupCategory, GroupCategoryKind};
use crate::error::{Error, Result};
use crate::group::{subgroups_of, Collection, Elem, FiniteGroup, GroupHom, Subgroup};
use crate::linalg::Prime;

/// Largest Sylow subgroup handled; subgroup enumeration is exhaustive.
pub const MAX_SYLOW_ORDER: usize = 64;

/// An F-conjugacy class of subgroups of S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionClass {
    /// Fully normalized member; ties go to the least element tuple.
    pub representative: Subgroup,
    /// Every member, sorted.
    pub members: Vec<Subgroup>,
}

impl FusionClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

/// Flags of a class, evaluated at its representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub fully_normalized: bool,
    pub fully_centralized: bool,
    pub fully_automized: bool,
    pub receptive: bool,
    pub centric: bool,
    pub radical: bool,
    pub centric_radical: bool,
}

/// The fusion system `F_S(A)` of a subgroup `A` of a finite group at a
/// prime, with `S` a Sylow p-subgroup of `A`.
///
/// Morphism sets are kept per pair of classes as transporter cosets
/// `N_A(P, Q) / C_A(P)` between the representatives, one least element
/// per coset. Morphisms between other members are obtained by
/// conjugating with the stored element taking each member to its
/// representative.
#[derive(Clone)]
pub struct FusionSystem {
    group: Arc<FiniteGroup>,
    ambient: Subgroup,
    p: Prime,
    sylow: Subgroup,
    subgroups: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    class_of: Vec<usize>,
    to_rep: Vec<Elem>,
    classes: Vec<FusionClass>,
    tokens: Vec<Vec<Vec<Elem>>>,
    name: String,
}

impl std::fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FusionSystem({}, {} classes)", self.name, self.classes.len())
    }
}

/// `F_S(G)` for the least Sylow p-subgroup `S` of `G`.
pub fn fusion_system(group: &Arc<FiniteGroup>, p: Prime) -> Result<FusionSystem> {
    FusionSystem::realized(group, &group.whole(), p)
}

impl FusionSystem {
    /// `F_S(A)` with `S` the least Sylow p-subgroup of `ambient`.
    pub fn realized(group: &Arc<FiniteGroup>, ambient: &Subgroup, p: Prime) -> Result<Self> {
        let sylow = group.sylow_of(ambient, p);
        Self::realized_over(group, ambient, p, &sylow)
    }

    /// `F_S(A)` for a given Sylow p-subgroup `S` of `A`.
    pub fn realized_over(group: &Arc<FiniteGroup>, ambient: &Subgroup, p: Prime, sylow: &Subgroup) -> Result<Self> {
        if !sylow.is_subgroup_of(ambient) || sylow.order() != p.part_of(ambient.order()) {
            return Err(Error::Input(format!("{} is not a Sylow {}-subgroup", sylow.describe(group), p.get())));
        }
        if sylow.order() > MAX_SYLOW_ORDER {
            return Err(Error::SizeBound { what: "Sylow subgroup order", limit: MAX_SYLOW_ORDER });
        }
        let subgroups = subgroups_of(group, sylow);
        let index: HashMap<Subgroup, usize> = subgroups.iter().cloned().enumerate().map(|(i, h)| (h, i)).collect();
        let n = subgroups.len();
        // conj_from_first[i]: least a with a P a^-1 = subgroups[i], P the first member found.
        let mut raw_class = vec![usize::MAX; n];
        let mut conj_from_first = vec![0 as Elem; n];
        let mut raw_members: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if raw_class[i] != usize::MAX {
                continue;
            }
            let c = raw_members.len();
            let mut members = Vec::new();
            for &a in ambient.elements() {
                let q = group.conjugate(a, &subgroups[i]);
                if let Some(&j) = index.get(&q) {
                    if raw_class[j] == usize::MAX {
                        raw_class[j] = c;
                        conj_from_first[j] = a;
                        members.push(j);
                    }
                }
            }
            members.sort_unstable();
            raw_members.push(members);
        }
        let n_s = |h: &Subgroup| group.normalizer(h).intersect(group, sylow).order();
        let mut classes: Vec<(FusionClass, usize, Vec<usize>)> = raw_members
            .into_iter()
            .map(|members| {
                let rep = *members
                    .iter()
                    .min_by(|&&a, &&b| {
                        n_s(&subgroups[b])
                            .cmp(&n_s(&subgroups[a]))
                            .then_with(|| subgroups[a].elements().cmp(subgroups[b].elements()))
                    })
                    .expect("classes are nonempty");
                let class = FusionClass {
                    representative: subgroups[rep].clone(),
                    members: members.iter().map(|&j| subgroups[j].clone()).collect(),
                };
                (class, rep, members)
            })
            .collect();
        classes.sort_by(|a, b| {
            (a.0.order(), a.0.representative.elements()).cmp(&(b.0.order(), b.0.representative.elements()))
        });
        let mut class_of = vec![0; n];
        let mut to_rep = vec![0 as Elem; n];
        for (c, (_, rep, members)) in classes.iter().enumerate() {
            let a_rep = conj_from_first[*rep];
            for &j in members {
                class_of[j] = c;
                // a_j P a_j^-1 = Q_j, so a_rep a_j^-1 takes Q_j to the representative.
                to_rep[j] = group.mul(a_rep, group.inv(conj_from_first[j]));
            }
        }
        let classes: Vec<FusionClass> = classes.into_iter().map(|c| c.0).collect();
        let tokens = classes
            .iter()
            .map(|a| {
                let cent = group.centralizer(&a.representative).intersect(group, ambient);
                classes
                    .iter()
                    .map(|b| {
                        let t: Vec<Elem> = group
                            .transporter(&a.representative, &b.representative)
                            .into_iter()
                            .filter(|&g| ambient.contains(g))
                            .collect();
                        group.double_cosets(&group.trivial(), &t, &cent)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let name = if *ambient == group.whole() {
            format!("F_{}({})", sylow.describe(group), group.name())
        } else {
            format!("F_{}({})", sylow.describe(group), ambient.describe(group))
        };
        Ok(FusionSystem {
            group: group.clone(),
            ambient: ambient.clone(),
            p,
            sylow: sylow.clone(),
            subgroups,
            index,
            class_of,
            to_rep,
            classes,
            tokens,
            name,
        })
    }

    /// A copy in which only the stored tokens `from -> to` accepted by `keep`
    /// survive. Used to build corrupted instances for negative controls.
    pub fn with_deleted_morphisms(&self, from: usize, to: usize, keep: impl Fn(Elem) -> bool) -> Self {
        let mut out = self.clone();
        out.tokens[from][to].retain(|&t| keep(t));
        out.name = format!("{} (corrupted)", self.name);
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.ambient
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.sylow
    }

    /// Every subgroup of S, sorted by order and then element tuple.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn classes(&self) -> &[FusionClass] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &FusionClass {
        &self.classes[c]
    }

    /// The class of a subgroup of S.
    pub fn class_index(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h).map(|&i| self.class_of[i])
    }

    /// The class of an arbitrary p-subgroup of the ambient group, through a
    /// conjugate inside S.
    pub fn class_of_any(&self, h: &Subgroup) -> Option<usize> {
        if let Some(c) = self.class_index(h) {
            return Some(c);
        }
        self.ambient
            .elements()
            .iter()
            .find_map(|&a| self.class_index(&self.group.conjugate(a, h)))
    }

    /// The class containing `S`.
    pub fn top_class(&self) -> usize {
        self.class_index(&self.sylow).expect("S is a subgroup of itself")
    }

    /// An element of the ambient group conjugating `h ≤ S` onto its class
    /// representative.
    pub fn conjugator_to_representative(&self, h: &Subgroup) -> Option<Elem> {
        self.index.get(h).map(|&i| self.to_rep[i])
    }

    /// The stored coset tokens between two class representatives.
    pub fn tokens(&self, from: usize, to: usize) -> &[Elem] {
        &self.tokens[from][to]
    }

    /// Elements `g` with `c_g: P -> Q` running once over `Hom_F(P, Q)`.
    pub fn hom_elements(&self, p: &Subgroup, q: &Subgroup) -> Vec<Elem> {
        let (Some(&i), Some(&j)) = (self.index.get(p), self.index.get(q)) else {
            return Vec::new();
        };
        let g = &self.group;
        let (up, uq_inv) = (self.to_rep[i], g.inv(self.to_rep[j]));
        self.tokens[self.class_of[i]][self.class_of[j]]
            .iter()
            .map(|&t| g.mul(uq_inv, g.mul(t, up)))
            .collect()
    }

    /// `Hom_F(P, Q)` as explicit maps.
    pub fn hom(&self, p: &Subgroup, q: &Subgroup) -> Vec<GroupHom> {
        self.hom_elements(p, q)
            .into_iter()
            .map(|g| GroupHom::conjugation(&self.group, g, p, q))
            .collect()
    }

    pub fn aut(&self, p: &Subgroup) -> Vec<GroupHom> {
        self.hom(p, p)
    }

    /// `Aut_S(P) = N_S(P) / C_S(P)` as explicit maps, without repeats.
    pub fn aut_s(&self, p: &Subgroup) -> Vec<GroupHom> {
        let g = &self.group;
        let ns = self.normalizer_in_s(p);
        let cs = self.centralizer_in_s(p);
        g.double_cosets(&g.trivial(), ns.elements(), &cs)
            .expect("normalizer is a union of centralizer cosets")
            .into_iter()
            .map(|x| GroupHom::conjugation(g, x, p, p))
            .collect()
    }

    pub fn normalizer_in_s(&self, h: &Subgroup) -> Subgroup {
        self.group.normalizer(h).intersect(&self.group, &self.sylow)
    }

    pub fn centralizer_in_s(&self, h: &Subgroup) -> Subgroup {
        self.group.centralizer(h).intersect(&self.group, &self.sylow)
    }

    pub fn normalizer_in_ambient(&self, h: &Subgroup) -> Subgroup {
        self.group.normalizer(h).intersect(&self.group, &self.ambient)
    }

    pub fn centralizer_in_ambient(&self, h: &Subgroup) -> Subgroup {
        self.group.centralizer(h).intersect(&self.group, &self.ambient)
    }

    fn members_of(&self, h: &Subgroup) -> &[Subgroup] {
        let c = self.class_index(h).expect("subgroup of S");
        &self.classes[c].members
    }

    pub fn is_fully_normalized(&self, h: &Subgroup) -> bool {
        let n = self.normalizer_in_s(h).order();
        self.members_of(h).iter().all(|q| self.normalizer_in_s(q).order() <= n)
    }

    pub fn is_fully_centralized(&self, h: &Subgroup) -> bool {
        let n = self.centralizer_in_s(h).order();
        self.members_of(h).iter().all(|q| self.centralizer_in_s(q).order() <= n)
    }

    /// `Aut_S(P)` is a Sylow p-subgroup of `Aut_F(P)` (and lies in it).
    pub fn is_fully_automized(&self, h: &Subgroup) -> bool {
        let auts = self.aut(h);
        let inner = self.aut_s(h);
        let stored: std::collections::HashSet<&[Elem]> = auts.iter().map(|a| a.images()).collect();
        inner.iter().all(|a| stored.contains(a.images())) && inner.len() == self.p.part_of(auts.len())
    }

    /// `C_S(Q) ≤ Q` for every member `Q` of the class.
    pub fn is_centric(&self, h: &Subgroup) -> bool {
        self.members_of(h).iter().all(|q| self.centralizer_in_s(q).is_subgroup_of(q))
    }

    /// `Out_F(P)` has no nontrivial normal p-subgroup. Computed in
    /// `N_A(P) / P C_A(P)`: the preimage of its largest normal p-subgroup is
    /// the intersection of the conjugates of `T P C_A(P)`, `T` Sylow in `N_A(P)`.
    pub fn is_radical(&self, h: &Subgroup) -> bool {
        let g = &self.group;
        let n = self.normalizer_in_ambient(h);
        let m = g.subgroup_product(h, &self.centralizer_in_ambient(h)).expect("P C(P) is a subgroup");
        let t = g.sylow_of(&n, self.p);
        let tm = g.subgroup_product(&t, &m).expect("M is normal in N");
        let mut core = tm.clone();
        for &x in n.elements() {
            if core.order() == m.order() {
                break;
            }
            core = core.intersect(g, &g.conjugate(x, &tm));
        }
        core.order() == m.order()
    }

    /// Classes whose representatives satisfy `keep`, as indices.
    pub fn classes_where(&self, keep: impl Fn(&Subgroup) -> bool) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| keep(&self.classes[c].representative)).collect()
    }

    pub fn centric_classes(&self) -> Vec<usize> {
        self.classes_where(|h| self.is_centric(h))
    }

    pub fn centric_radical_classes(&self) -> Vec<usize> {
        self.classes_where(|h| self.is_centric(h) && self.is_radical(h))
    }

    /// Nontrivial elementary abelian classes.
    pub fn elementary_abelian_classes(&self) -> Vec<usize> {
        let p = self.p.get();
        self.classes_where(|h| !h.is_trivial() && h.is_elementary_abelian(&self.group, p))
    }

    /// The closure of the given classes under F-overgroups inside S.
    pub fn overgroup_closure(&self, classes: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.classes.len())
            .filter(|&c| {
                self.classes[c].members.iter().any(|big| {
                    classes.iter().any(|&d| self.classes[d].members.iter().any(|small| small.is_subgroup_of(big)))
                })
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Whether every member of every F-overgroup of a listed class is listed.
    pub fn is_overgroup_closed(&self, classes: &[usize]) -> bool {
        self.overgroup_closure(classes).iter().all(|c| classes.contains(c))
    }

    /// The conjugation-closed collection of the ambient group generated by
    /// the representatives of `classes`.
    pub fn ambient_collection(&self, classes: &[usize]) -> Result<Collection> {
        let reps: Vec<Subgroup> = classes.iter().map(|&c| self.classes[c].representative.clone()).collect();
        Collection::closure_of(&self.group, &self.ambient, &reps)
    }

    /// A category of `kind` on the representatives of `classes`:
    /// `Fusion` gives the full subcategory of F, `FusionOrbit` gives O(F_C),
    /// `Orbit` the orbit category of the ambient group on the same objects.
    pub fn category_on(&self, classes: &[usize], kind: GroupCategoryKind) -> Result<GroupCategory> {
        let objects = classes.iter().map(|&c| self.classes[c].representative.clone()).collect();
        self.category_on_objects(classes, objects, kind)
    }

    /// Like `category_on`, with one chosen member per class as object.
    pub fn category_on_objects(&self, classes: &[usize], objects: Vec<Subgroup>, kind: GroupCategoryKind) -> Result<GroupCategory> {
        let collection = self.ambient_collection(classes)?;
        GroupCategory::build_on(&self.group, &collection, kind, objects)
    }

    /// The orbit category `O(F_C)` on the given classes.
    pub fn orbit_category(&self, classes: &[usize]) -> Result<GroupCategory> {
        self.category_on(classes, GroupCategoryKind::FusionOrbit)
    }

    /// `O^c(F)`.
    pub fn centric_orbit_category(&self) -> Result<GroupCategory> {
        self.orbit_category(&self.centric_classes())
    }

    /// `F^e`: nontrivial elementary abelian classes on fully centralized
    /// members, the least element tuple among ties.
    pub fn elementary_abelian_category(&self) -> Result<GroupCategory> {
        let classes = self.elementary_abelian_classes();
        let objects = classes.iter().map(|&c| self.fully_centralized_member(c)).collect();
        self.category_on_objects(&classes, objects, GroupCategoryKind::Fusion)
    }

    /// The member of class `c` with the largest centralizer in S.
    pub fn fully_centralized_member(&self, c: usize) -> Subgroup {
        self.classes[c]
            .members
            .iter()
            .max_by(|a, b| {
                self.centralizer_in_s(a)
                    .order()
                    .cmp(&self.centralizer_in_s(b).order())
                    .then_with(|| b.elements().cmp(a.elements()))
            })
            .expect("classes are nonempty")
            .clone()
    }

    /// Lemma-style group-side test: `Z(P)` is a Sylow p-subgroup of `C_A(P)`.
    pub fn is_p_centric_in_ambient(&self, h: &Subgroup) -> bool {
        p_centric_check(&self.group, &self.ambient, self.p, h)
    }
}

/// Whether `Z(P)` is a Sylow p-subgroup of `C_A(P)`.
pub fn p_centric_check(group: &FiniteGroup, ambient: &Subgroup, p: Prime, h: &Subgroup) -> bool {
    let c = group.centralizer(h).intersect(group, ambient);
    group.center(h).order() == p.part_of(c.order())
}

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::finite::{CategoryBuilder, FiniteCategory, MorId, ObjId};
use super::functor::CatFunctor;
use crate::error::{Error, Result};
use crate::group::{Collection, Elem, FiniteGroup, Subgroup};

/// The four categories attached to a group and a collection of subgroups.
///
/// Morphisms `H -> K` are represented by elements `g` with `g H g^-1 <= K`,
/// taken modulo nothing (transporter), `K` on the left (orbit), `C(H)` on
/// the right (fusion) or both (fusion orbit).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupCategoryKind {
    Transporter,
    Orbit,
    Fusion,
    FusionOrbit,
}

impl GroupCategoryKind {
    fn left_quotient(self) -> bool {
        matches!(self, GroupCategoryKind::Orbit | GroupCategoryKind::FusionOrbit)
    }

    fn right_quotient(self) -> bool {
        matches!(self, GroupCategoryKind::Fusion | GroupCategoryKind::FusionOrbit)
    }

    /// Whether `other` is a quotient of `self`, so that a comparison
    /// functor `self -> other` exists.
    pub fn refines(self, other: GroupCategoryKind) -> bool {
        self.left_quotient() <= other.left_quotient()
            && (self.right_quotient() <= other.right_quotient())
    }

    pub fn symbol(self) -> &'static str {
        match self {
            GroupCategoryKind::Transporter => "T",
            GroupCategoryKind::Orbit => "O",
            GroupCategoryKind::Fusion => "F",
            GroupCategoryKind::FusionOrbit => "Fbar",
        }
    }
}

/// Build on class representatives (the default), on every member, or on
/// caller-chosen objects (see `GroupCategory::build_on`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layout {
    #[default]
    Skeleton,
    Full,
    Chosen,
}

/// A category built from a group, with its subgroup objects and the group
/// element token of every morphism.
#[derive(Clone)]
pub struct GroupCategory {
    group: Arc<FiniteGroup>,
    ambient: Subgroup,
    kind: GroupCategoryKind,
    layout: Layout,
    collection: Collection,
    objects: Vec<Subgroup>,
    tokens: Vec<Elem>,
    category: Arc<FiniteCategory>,
    // lookup[x * n + y]: element of the transporter -> its morphism
    lookup: Vec<HashMap<Elem, MorId>>,
}

impl GroupCategory {
    /// Builds the category of `kind` over the ambient group of `collection`.
    pub fn build(
        group: &Arc<FiniteGroup>,
        collection: &Collection,
        kind: GroupCategoryKind,
        layout: Layout,
    ) -> Result<Self> {
        let objects = match layout {
            Layout::Skeleton => collection.representatives(),
            Layout::Full => collection.members(),
            Layout::Chosen => {
                return Err(Error::Construction("chosen objects are passed to build_on".into()));
            }
        };
        Self::assemble(group, collection, kind, layout, objects)
    }

    /// Builds on the given objects, which must be members of `collection`.
    pub fn build_on(
        group: &Arc<FiniteGroup>,
        collection: &Collection,
        kind: GroupCategoryKind,
        objects: Vec<Subgroup>,
    ) -> Result<Self> {
        if let Some(h) = objects.iter().find(|h| !collection.contains(h)) {
            return Err(Error::Input(format!("{} is not in the collection", h.describe(group))));
        }
        Self::assemble(group, collection, kind, Layout::Chosen, objects)
    }

    fn assemble(
        group: &Arc<FiniteGroup>,
        collection: &Collection,
        kind: GroupCategoryKind,
        layout: Layout,
        objects: Vec<Subgroup>,
    ) -> Result<Self> {
        let ambient = collection.ambient().clone();
        let n = objects.len();
        let name = format!("{}({})", kind.symbol(), group.name());
        let mut b = CategoryBuilder::new(&name);
        for h in &objects {
            b.add_object(h.describe(group));
        }
        let trivial = group.trivial();
        let centralizers: Vec<Subgroup> =
            objects.iter().map(|h| group.centralizer(h).intersect(group, &ambient)).collect();
        let mut tokens = Vec::new();
        let mut endpoints = Vec::new();
        let mut lookup = vec![HashMap::new(); n * n];
        for (x, h) in objects.iter().enumerate() {
            for (y, k) in objects.iter().enumerate() {
                let t: Vec<Elem> =
                    group.transporter(h, k).into_iter().filter(|&g| ambient.contains(g)).collect();
                let left = if kind.left_quotient() { k } else { &trivial };
                let right = if kind.right_quotient() { &centralizers[x] } else { &trivial };
                for orbit in group.double_coset_partition(left, &t, right)? {
                    let m = b.add_morphism(x, y, group.cycle_string(orbit[0]));
                    tokens.push(orbit[0]);
                    endpoints.push((x, y));
                    for g in orbit {
                        lookup[x * n + y].insert(g, m);
                    }
                }
            }
        }
        for x in 0..n {
            b.set_identity(x, lookup[x * n + x][&0]);
        }
        let category = b.build(|g, f| {
            let (x, _) = endpoints[f];
            let (_, z) = endpoints[g];
            lookup[x * n + z][&group.mul(tokens[g], tokens[f])]
        })?;
        Ok(GroupCategory {
            group: group.clone(),
            ambient,
            kind,
            layout,
            collection: collection.clone(),
            objects,
            tokens,
            category: Arc::new(category),
            lookup,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.ambient
    }

    pub fn kind(&self) -> GroupCategoryKind {
        self.kind
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn collection(&self) -> &Collection {
        &self.collection
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn objects(&self) -> &[Subgroup] {
        &self.objects
    }

    pub fn object(&self, x: ObjId) -> &Subgroup {
        &self.objects[x]
    }

    /// The canonical group element of a morphism.
    pub fn token(&self, f: MorId) -> Elem {
        self.tokens[f]
    }

    /// The morphism `x -> y` represented by `g`, if `g` transports.
    pub fn morphism_for(&self, x: ObjId, y: ObjId, g: Elem) -> Option<MorId> {
        self.lookup[x * self.objects.len() + y].get(&g).copied()
    }

    /// The object equal to `h` (with `t = 1`), or else the first object
    /// conjugate to it inside the ambient group with the least conjugator `t`
    /// such that `t h t^-1` is that object.
    pub fn locate(&self, h: &Subgroup) -> Option<(ObjId, Elem)> {
        let g = &self.group;
        if let Some(x) = self.objects.iter().position(|k| k == h) {
            return Some((x, 0));
        }
        for (x, k) in self.objects.iter().enumerate() {
            if k.order() != h.order() {
                continue;
            }
            if let Some(&t) = self
                .ambient
                .elements()
                .iter()
                .find(|&&t| h.gens().iter().all(|&a| k.contains(g.conj(t, a))))
            {
                return Some((x, t));
            }
        }
        None
    }

    /// The comparison functor `self -> target`: the identity on subgroups
    /// up to the least conjugator in the target's ambient group, and
    /// `g |-> t' g t^-1` on morphisms.
    ///
    /// This realizes the projection `pr`, the subgroup functors `i_H^G`
    /// and `j_H^G`, and inclusions of collections.
    pub fn functor_to(&self, target: &GroupCategory) -> Result<CatFunctor> {
        if !self.kind.refines(target.kind) {
            return Err(Error::Construction(format!(
                "no comparison functor from {:?} to {:?}",
                self.kind, target.kind
            )));
        }
        if !self.ambient.is_subgroup_of(&target.ambient) {
            return Err(Error::Construction("source ambient group is not inside the target's".into()));
        }
        let g = &self.group;
        let located = self
            .objects
            .iter()
            .map(|h| {
                target
                    .locate(h)
                    .ok_or_else(|| Error::Construction(format!("{} has no image object", h.describe(g))))
            })
            .collect::<Result<Vec<_>>>()?;
        let cat = &self.category;
        let morphism_map = (0..cat.num_morphisms())
            .map(|f| {
                let (x, y) = (cat.source(f), cat.target(f));
                let (tx, ty) = (located[x].1, located[y].1);
                let image = g.mul(ty, g.mul(self.tokens[f], g.inv(tx)));
                target.morphism_for(located[x].0, located[y].0, image).expect("conjugated token transports")
            })
            .collect();
        CatFunctor::new(
            self.category.clone(),
            target.category.clone(),
            located.iter().map(|l| l.0).collect(),
            morphism_map,
        )
    }
}

impl fmt::Debug for GroupCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupCategory({:?}, {:?})", self.kind, self.category)
    }
}

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Morphism {
    pub source: ObjId,
    pub target: ObjId,
    pub label: String,
}

/// A finite category with every hom-set enumerated and a total
/// composition table.
///
/// `compose(g, f)` is `g ∘ f`: first `f`, then `g`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    homs: Vec<Vec<MorId>>,
    hom_position: Vec<usize>,
    outgoing: Vec<Vec<MorId>>,
    out_position: Vec<usize>,
    identities: Vec<MorId>,
    // after[f][out_position[g]] = g ∘ f
    after: Vec<Vec<MorId>>,
}

/// First failure found by `check_category`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryViolation {
    LeftIdentity { morphism: MorId },
    RightIdentity { morphism: MorId },
    Associativity { h: MorId, g: MorId, f: MorId },
    Typing { g: MorId, f: MorId },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryViolation::LeftIdentity { morphism } => write!(f, "id ∘ {morphism} != {morphism}"),
            CategoryViolation::RightIdentity { morphism } => write!(f, "{morphism} ∘ id != {morphism}"),
            CategoryViolation::Associativity { h, g, f: m } => {
                write!(f, "({h} ∘ {g}) ∘ {m} != {h} ∘ ({g} ∘ {m})")
            }
            CategoryViolation::Typing { g, f: m } => write!(f, "{g} ∘ {m} has the wrong source or target"),
        }
    }
}

/// Incremental construction of a `FiniteCategory`.
#[derive(Default)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Option<MorId>>,
}

impl CategoryBuilder {
    pub fn new(name: &str) -> Self {
        CategoryBuilder { name: name.to_string(), ..Default::default() }
    }

    pub fn add_object(&mut self, label: impl Into<String>) -> ObjId {
        self.objects.push(label.into());
        self.identities.push(None);
        self.objects.len() - 1
    }

    pub fn add_morphism(&mut self, source: ObjId, target: ObjId, label: impl Into<String>) -> MorId {
        self.morphisms.push(Morphism { source, target, label: label.into() });
        self.morphisms.len() - 1
    }

    pub fn set_identity(&mut self, object: ObjId, morphism: MorId) {
        self.identities[object] = Some(morphism);
    }

    /// Fills the composition table from `compose(g, f) = g ∘ f`, which is
    /// called once per composable pair.
    pub fn build(self, mut compose: impl FnMut(MorId, MorId) -> MorId) -> Result<FiniteCategory> {
        let identities = self
            .identities
            .iter()
            .enumerate()
            .map(|(x, id)| id.ok_or_else(|| Error::Construction(format!("object {x} has no identity"))))
            .collect::<Result<Vec<_>>>()?;
        let n = self.objects.len();
        let mut homs = vec![Vec::new(); n * n];
        let mut hom_position = vec![0; self.morphisms.len()];
        let mut outgoing = vec![Vec::new(); n];
        for (m, mor) in self.morphisms.iter().enumerate() {
            if mor.source >= n || mor.target >= n {
                return Err(Error::Construction(format!("morphism {m} has an unknown endpoint")));
            }
            let hom: &mut Vec<MorId> = &mut homs[mor.source * n + mor.target];
            hom_position[m] = hom.len();
            hom.push(m);
        }
        let mut out_position = vec![0; self.morphisms.len()];
        for x in 0..n {
            for y in 0..n {
                for &m in &homs[x * n + y] {
                    out_position[m] = outgoing[x].len();
                    outgoing[x].push(m);
                }
            }
        }
        let mut after = Vec::with_capacity(self.morphisms.len());
        for f in 0..self.morphisms.len() {
            let y = self.morphisms[f].target;
            let row: Vec<MorId> = outgoing[y].iter().map(|&g| compose(g, f)).collect();
            after.push(row);
        }
        Ok(FiniteCategory {
            name: self.name,
            objects: self.objects,
            morphisms: self.morphisms,
            homs,
            hom_position,
            outgoing,
            out_position,
            identities,
            after,
        })
    }
}

impl FiniteCategory {
    pub fn empty(name: &str) -> Self {
        CategoryBuilder::new(name).build(|_, _| unreachable!()).expect("empty category")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object_label(&self, x: ObjId) -> &str {
        &self.objects[x]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn source(&self, f: MorId) -> ObjId {
        self.morphisms[f].source
    }

    pub fn target(&self, f: MorId) -> ObjId {
        self.morphisms[f].target
    }

    /// `Mor(x, y)` in construction order.
    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.homs[x * self.objects.len() + y]
    }

    /// Index of `f` inside its hom-set.
    pub fn hom_position(&self, f: MorId) -> usize {
        self.hom_position[f]
    }

    /// Every morphism out of `x`, grouped by target.
    pub fn outgoing(&self, x: ObjId) -> &[MorId] {
        &self.outgoing[x]
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.source(f)] == f
    }

    /// `g ∘ f`.
    #[inline]
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        debug_assert_eq!(self.morphisms[f].target, self.morphisms[g].source);
        self.after[f][self.out_position[g]]
    }

    /// An inverse of `f`, if it is an isomorphism.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (x, y) = (self.source(f), self.target(f));
        self.hom(y, x)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.identities[x] && self.compose(f, g) == self.identities[y])
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Exhaustive check of the identity and associativity laws.
    pub fn check(&self) -> std::result::Result<(), CategoryViolation> {
        for (f, m) in self.morphisms.iter().enumerate() {
            for &g in &self.outgoing[m.target] {
                let gf = self.after[f][self.out_position[g]];
                if self.source(gf) != m.source || self.target(gf) != self.target(g) {
                    return Err(CategoryViolation::Typing { g, f });
                }
            }
            if self.compose(self.identities[m.target], f) != f {
                return Err(CategoryViolation::LeftIdentity { morphism: f });
            }
            if self.compose(f, self.identities[m.source]) != f {
                return Err(CategoryViolation::RightIdentity { morphism: f });
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.outgoing[self.target(f)] {
                let gf = self.compose(g, f);
                for &h in &self.outgoing[self.target(g)] {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(CategoryViolation::Associativity { h, g, f });
                    }
                }
            }
        }
        Ok(())
    }

    /// Every composable pair `(g, f)` with its composite.
    pub fn composition_table(&self) -> HashMap<(MorId, MorId), MorId> {
        let mut table = HashMap::new();
        for f in 0..self.morphisms.len() {
            for &g in &self.outgoing[self.target(f)] {
                table.insert((g, f), self.compose(g, f));
            }
        }
        table
    }

    /// Rebuilds this category with one composite replaced; for negative
    /// controls of the law checker.
    pub fn with_composite(&self, g: MorId, f: MorId, value: MorId) -> FiniteCategory {
        let mut out = self.clone();
        let pos = out.out_position[g];
        out.after[f][pos] = value;
        out
    }

    pub fn opposite(&self) -> FiniteCategory {
        let mut b = CategoryBuilder::new(&format!("{}^op", self.name));
        for label in &self.objects {
            b.add_object(label.clone());
        }
        for m in &self.morphisms {
            b.add_morphism(m.target, m.source, m.label.clone());
        }
        for (x, &id) in self.identities.iter().enumerate() {
            b.set_identity(x, id);
        }
        // g ∘op f = f ∘ g in the original.
        b.build(|g, f| self.compose(f, g)).expect("opposite of a valid category")
    }

    /// The full subcategory on `objects` (in the given order) and its
    /// inclusion morphism map.
    pub fn full_subcategory(&self, name: &str, objects: &[ObjId]) -> (FiniteCategory, Vec<MorId>) {
        let mut b = CategoryBuilder::new(name);
        for &x in objects {
            b.add_object(self.objects[x].clone());
        }
        let mut to_old = Vec::new();
        let mut to_new: HashMap<MorId, MorId> = HashMap::new();
        for (i, &x) in objects.iter().enumerate() {
            for (j, &y) in objects.iter().enumerate() {
                for &f in self.hom(x, y) {
                    let id = b.add_morphism(i, j, self.morphisms[f].label.clone());
                    to_old.push(f);
                    to_new.insert(f, id);
                }
            }
        }
        for (i, &x) in objects.iter().enumerate() {
            b.set_identity(i, to_new[&self.identities[x]]);
        }
        let cat = b
            .build(|g, f| to_new[&self.compose(to_old[g], to_old[f])])
            .expect("full subcategory of a valid category");
        (cat, to_old)
    }

    /// Objects grouped into isomorphism classes; classes ordered by their
    /// least object, each class sorted.
    pub fn isomorphism_classes(&self) -> Vec<Vec<ObjId>> {
        let n = self.objects.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<ObjId>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let members: Vec<ObjId> = (x..n)
                .filter(|&y| class_of[y] == usize::MAX && self.hom(x, y).iter().any(|&f| self.is_iso(f)))
                .collect();
            for &y in &members {
                class_of[y] = classes.len();
            }
            classes.push(members);
        }
        classes
    }

    pub fn is_skeletal(&self) -> bool {
        self.isomorphism_classes().iter().all(|c| c.len() == 1)
    }

    /// Debug dump: objects, hom-set sizes and a hash of the composition table.
    pub fn dump(&self) -> CategoryDump {
        let n = self.objects.len();
        let hom_sizes = (0..n).map(|x| (0..n).map(|y| self.hom(x, y).len()).collect()).collect();
        let mut hasher = Sha256::new();
        hasher.update((self.morphisms.len() as u64).to_le_bytes());
        for f in 0..self.morphisms.len() {
            for &c in &self.after[f] {
                hasher.update((c as u64).to_le_bytes());
            }
        }
        let digest = hasher.finalize();
        CategoryDump {
            name: self.name.clone(),
            objects: self.objects.clone(),
            hom_sizes,
            composition_sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

impl fmt::Debug for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteCategory({}, {} objects, {} morphisms)", self.name, self.num_objects(), self.num_morphisms())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CategoryDump {
    pub name: String,
    pub objects: Vec<String>,
    pub hom_sizes: Vec<Vec<usize>>,
    pub composition_sha256: String,
}

/// The category of a finite poset given by `le(i, j)` (i <= j); one
/// morphism `i -> j` whenever `le(i, j)`.
pub fn poset_category(name: &str, labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Result<FiniteCategory> {
    let n = labels.len();
    let mut b = CategoryBuilder::new(name);
    for l in labels {
        b.add_object(l);
    }
    let mut ids: HashMap<(usize, usize), MorId> = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            if le(i, j) {
                ids.insert((i, j), b.add_morphism(i, j, format!("{i}<={j}")));
            }
        }
    }
    for i in 0..n {
        let id = *ids.get(&(i, i)).ok_or_else(|| Error::Construction("poset relation is not reflexive".into()))?;
        b.set_identity(i, id);
    }
    let mut ends = Vec::with_capacity(ids.len());
    let mut by_id: Vec<(usize, usize)> = vec![(0, 0); ids.len()];
    for (&k, &v) in &ids {
        by_id[v] = k;
    }
    ends.extend(by_id.iter().copied());
    let mut missing = false;
    let cat = b.build(|g, f| {
        let (i, _) = ends[f];
        let (_, k) = ends[g];
        match ids.get(&(i, k)) {
            Some(&m) => m,
            None => {
                missing = true;
                f
            }
        }
    })?;
    if missing {
        return Err(Error::Construction("poset relation is not transitive".into()));
    }
    Ok(cat)
}

/// The one-object category of a finite monoid or group given by its
/// multiplication on `0..order`, with `mul(a, b)` meaning "a after b".
pub fn one_object_category(
    name: &str,
    labels: Vec<String>,
    identity: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> FiniteCategory {
    let mut b = CategoryBuilder::new(name);
    b.add_object(name.to_string());
    for l in labels {
        b.add_morphism(0, 0, l);
    }
    b.set_identity(0, identity);
    b.build(mul).expect("one-object category")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteCategory {
        one_object_category("C", (0..n).map(|i| i.to_string()).collect(), 0, |a, b| (a + b) % n)
    }

    #[test]
    fn group_category_passes_checks() {
        let c = cyclic(4);
        assert!(c.check().is_ok());
        assert_eq!(c.hom(0, 0).len(), 4);
        assert_eq!(c.inverse(1), Some(3));
    }

    #[test]
    fn corrupted_composite_is_named() {
        let c = cyclic(3);
        let bad = c.with_composite(1, 1, 0);
        match bad.check() {
            Err(CategoryViolation::Associativity { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let bad = c.with_composite(0, 2, 1);
        assert_eq!(bad.check(), Err(CategoryViolation::LeftIdentity { morphism: 2 }));
    }

    #[test]
    fn empty_category_is_lawful() {
        let e = FiniteCategory::empty("∅");
        assert!(e.check().is_ok());
        assert!(e.is_empty());
    }

    #[test]
    fn opposite_is_involutive() {
        let p = poset_category("P", vec!["a".into(), "b".into(), "c".into()], |i, j| i <= j).unwrap();
        let op = p.opposite();
        assert!(op.check().is_ok());
        assert_eq!(op.hom(2, 0).len(), 1);
        assert_eq!(op.hom(0, 2).len(), 0);
        let back = op.opposite();
        assert_eq!(back.composition_table(), p.composition_table());
        assert_eq!(back.morphisms(), p.morphisms());
    }

    #[test]
    fn poset_rejects_non_transitive_relation() {
        let le = |i: usize, j: usize| i == j || (i, j) == (0, 1) || (i, j) == (1, 2);
        assert!(poset_category("bad", vec!["a".into(), "b".into(), "c".into()], le).is_err());
    }

    #[test]
    fn discrete_category_is_skeletal() {
        let d = poset_category("D", vec!["a".into(), "b".into()], |i, j| i == j).unwrap();
        assert!(d.is_skeletal());
        assert_eq!(d.isomorphism_classes().len(), 2);
    }

    #[test]
    fn dump_hash_is_stable() {
        assert_eq!(cyclic(5).dump(), cyclic(5).dump());
        assert_ne!(cyclic(5).dump().composition_sha256, cyclic(4).dump().composition_sha256);
    }
}

use std::collections::HashSet;

use super::finite::{Elem, FiniteGroup};
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// Largest subgroup order for which automorphisms are enumerated.
pub const MAX_AUT_ORDER: usize = 64;

/// A homomorphism between two subgroups of one ambient group, stored as the
/// image of every source element (aligned with `source.elements()`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: Subgroup,
    target: Subgroup,
    images: Vec<Elem>,
    injective: bool,
}

impl GroupHom {
    /// Extends generator images to the whole source and checks every
    /// product relation of the source.
    pub fn from_generator_images(
        group: &FiniteGroup,
        source: &Subgroup,
        target: &Subgroup,
        gens: &[Elem],
        gen_images: &[Elem],
    ) -> Result<Self> {
        if gens.len() != gen_images.len() {
            return Err(Error::Input("generator and image lists differ in length".into()));
        }
        if gen_images.iter().any(|&y| !target.contains(y)) {
            return Err(Error::Input("a generator image lies outside the target".into()));
        }
        let images = extend_images(group, source, gens, gen_images)
            .ok_or_else(|| Error::Input("generator images do not define a homomorphism".into()))?;
        if source.elements().len() != images.len() {
            return Err(Error::Input("generators do not generate the source".into()));
        }
        let hom = Self::from_images_unchecked(source.clone(), target.clone(), images);
        hom.verify(group)?;
        Ok(hom)
    }

    /// Conjugation `x |-> g x g^-1` from `source` into `target`.
    pub fn conjugation(group: &FiniteGroup, g: Elem, source: &Subgroup, target: &Subgroup) -> Self {
        let images = source.elements().iter().map(|&x| group.conj(g, x)).collect::<Vec<_>>();
        debug_assert!(images.iter().all(|&y| target.contains(y)));
        GroupHom { source: source.clone(), target: target.clone(), images, injective: true }
    }

    pub fn identity(source: &Subgroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: source.clone(),
            images: source.elements().to_vec(),
            injective: true,
        }
    }

    pub fn inclusion(source: &Subgroup, target: &Subgroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            images: source.elements().to_vec(),
            injective: true,
        }
    }

    pub(crate) fn from_images_unchecked(source: Subgroup, target: Subgroup, images: Vec<Elem>) -> Self {
        let mut distinct = images.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let injective = distinct.len() == images.len();
        GroupHom { source, target, images, injective }
    }

    /// Checks `f(ab) = f(a) f(b)` on every pair of source elements.
    pub fn verify(&self, group: &FiniteGroup) -> Result<()> {
        let src = self.source.elements();
        for (i, &a) in src.iter().enumerate() {
            for (j, &b) in src.iter().enumerate() {
                let ab = self.source.position(group.mul(a, b)).expect("source is closed");
                if self.images[ab] != group.mul(self.images[i], self.images[j]) {
                    return Err(Error::Input(format!(
                        "relation {a}*{b} is not preserved by the homomorphism"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn target(&self) -> &Subgroup {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.images[self.source.position(x).expect("element of the source")]
    }

    /// The image subgroup.
    pub fn image(&self, group: &FiniteGroup) -> Subgroup {
        let mut elems = self.images.clone();
        elems.sort_unstable();
        elems.dedup();
        group.subgroup(elems).expect("image of a homomorphism is a subgroup")
    }

    pub fn kernel(&self, group: &FiniteGroup) -> Subgroup {
        let elems = self
            .source
            .elements()
            .iter()
            .zip(&self.images)
            .filter(|(_, &y)| y == 0)
            .map(|(&x, _)| x)
            .collect();
        group.subgroup(elems).expect("kernel is a subgroup")
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &GroupHom) -> GroupHom {
        let images = self.images.iter().map(|&y| then.apply(y)).collect();
        GroupHom::from_images_unchecked(self.source.clone(), then.target.clone(), images)
    }

    /// Restriction to a subgroup of the source.
    pub fn restrict(&self, to: &Subgroup) -> GroupHom {
        let images = to.elements().iter().map(|&x| self.apply(x)).collect();
        GroupHom::from_images_unchecked(to.clone(), self.target.clone(), images)
    }

    /// The same map with a different (containing) target.
    pub fn with_target(&self, target: &Subgroup) -> GroupHom {
        debug_assert!(self.images.iter().all(|&y| target.contains(y)));
        GroupHom { target: target.clone(), ..self.clone() }
    }

    /// Inverse of an injective map onto its image.
    pub fn inverse_on_image(&self, group: &FiniteGroup) -> GroupHom {
        let image = self.image(group);
        let mut images = vec![0; image.order()];
        for (&x, &y) in self.source.elements().iter().zip(&self.images) {
            images[image.position(y).unwrap()] = x;
        }
        GroupHom::from_images_unchecked(image, self.source.clone(), images)
    }
}

/// Extends generator images along the right Cayley graph of `source`,
/// failing on the first inconsistency.
fn extend_images(group: &FiniteGroup, source: &Subgroup, gens: &[Elem], gen_images: &[Elem]) -> Option<Vec<Elem>> {
    let n = source.order();
    let mut images: Vec<Option<Elem>> = vec![None; n];
    images[0] = Some(0);
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let ai = queue[i];
        let a = source.elements()[ai];
        let fa = images[ai].unwrap();
        for (&s, &fs) in gens.iter().zip(gen_images) {
            let b = group.mul(a, s);
            let bi = source.position(b)?;
            let fb = group.mul(fa, fs);
            match images[bi] {
                Some(existing) if existing != fb => return None,
                Some(_) => {}
                None => {
                    images[bi] = Some(fb);
                    queue.push(bi);
                }
            }
        }
        i += 1;
    }
    images.into_iter().collect()
}

/// All automorphisms of `q`, by exhaustive search over generator images.
pub fn automorphisms(group: &FiniteGroup, q: &Subgroup) -> Result<Vec<GroupHom>> {
    if q.order() > MAX_AUT_ORDER {
        return Err(Error::SizeBound { what: "automorphism search subgroup order", limit: MAX_AUT_ORDER });
    }
    let gens = q.gens().to_vec();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(gens.len());
    search_auts(group, q, &gens, &mut chosen, &mut out);
    out.sort_by(|a, b| a.images.cmp(&b.images));
    Ok(out)
}

fn search_auts(group: &FiniteGroup, q: &Subgroup, gens: &[Elem], chosen: &mut Vec<Elem>, out: &mut Vec<GroupHom>) {
    if chosen.len() == gens.len() {
        if let Some(images) = extend_images(group, q, gens, chosen) {
            let hom = GroupHom::from_images_unchecked(q.clone(), q.clone(), images);
            if hom.injective && hom.verify(group).is_ok() {
                out.push(hom);
            }
        }
        return;
    }
    let g = gens[chosen.len()];
    let order = group.element_order(g);
    for &y in q.elements() {
        if group.element_order(y) != order {
            continue;
        }
        chosen.push(y);
        // prune: the partial assignment must already be consistent on the
        // subgroup it generates.
        let sub = group.generate(&gens[..chosen.len()]);
        if extend_images(group, &sub, &gens[..chosen.len()], chosen).is_some() {
            search_auts(group, q, gens, chosen, out);
        }
        chosen.pop();
    }
}

/// `Aut(Q)`-subgroup closure of a set of automorphisms.
pub fn close_automorphisms(group: &FiniteGroup, gens: &[GroupHom]) -> Vec<GroupHom> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let q = first.source.clone();
    let id = GroupHom::identity(&q);
    let mut seen: HashSet<Vec<Elem>> = HashSet::from([id.images.clone()]);
    let mut all = vec![id];
    let mut i = 0;
    while i < all.len() {
        for g in gens {
            let h = all[i].then(g);
            if seen.insert(h.images.clone()) {
                all.push(h);
            }
        }
        i += 1;
    }
    let _ = group;
    all.sort_by(|a, b| a.images.cmp(&b.images));
    all
}

/// `N_G^K(Q) = { g in N_G(Q) : c_g|_Q in K }` for a set `K` of
/// automorphisms of `Q` that must be closed under composition.
pub fn k_normalizer(group: &FiniteGroup, q: &Subgroup, k: &[GroupHom]) -> Result<Subgroup> {
    let set: HashSet<&[Elem]> = k.iter().map(|a| a.images.as_slice()).collect();
    for a in k {
        if a.source != *q || a.target != *q || !a.injective {
            return Err(Error::Input("K must consist of automorphisms of Q".into()));
        }
        for b in k {
            if !set.contains(a.then(b).images.as_slice()) {
                return Err(Error::NotClosed("K is not closed under composition".into()));
            }
        }
    }
    let normalizer = group.normalizer(q);
    let elems = normalizer
        .elements()
        .iter()
        .copied()
        .filter(|&g| {
            let images: Vec<Elem> = q.elements().iter().map(|&x| group.conj(g, x)).collect();
            set.contains(images.as_slice())
        })
        .collect();
    group.subgroup(elems)
}

/// Automorphisms of the top of `chain` that fix every member setwise.
pub fn chain_stabilizer(group: &FiniteGroup, chain: &[Subgroup]) -> Result<Vec<GroupHom>> {
    let top = chain.last().ok_or_else(|| Error::Input("empty chain".into()))?;
    Ok(automorphisms(group, top)?
        .into_iter()
        .filter(|a| {
            chain.iter().all(|m| {
                let img: Vec<Elem> = m.elements().iter().map(|&x| a.apply(x)).collect();
                img.iter().all(|&y| m.contains(y))
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;
    use crate::linalg::Prime;

    #[test]
    fn automorphism_counts() {
        let s4 = builtin::symmetric(4).unwrap();
        let d8 = s4.sylow(Prime::new(2).unwrap());
        assert_eq!(automorphisms(&s4, &d8).unwrap().len(), 8);
        let v = s4.generate(&[s4.find(&[1, 0, 3, 2]).unwrap(), s4.find(&[2, 3, 0, 1]).unwrap()]);
        assert_eq!(automorphisms(&s4, &v).unwrap().len(), 6);
        let q8 = builtin::quaternion().unwrap();
        assert_eq!(automorphisms(&q8, &q8.whole()).unwrap().len(), 24);
        let c5 = builtin::cyclic(5).unwrap();
        assert_eq!(automorphisms(&c5, &c5.whole()).unwrap().len(), 4);
    }

    #[test]
    fn k_normalizer_extremes() {
        let s4 = builtin::symmetric(4).unwrap();
        let v = s4.generate(&[s4.find(&[1, 0, 3, 2]).unwrap(), s4.find(&[2, 3, 0, 1]).unwrap()]);
        let aut = automorphisms(&s4, &v).unwrap();
        assert_eq!(k_normalizer(&s4, &v, &aut).unwrap(), s4.normalizer(&v));
        let id = [GroupHom::identity(&v)];
        assert_eq!(k_normalizer(&s4, &v, &id).unwrap(), s4.centralizer(&v));
        // A single transposition-type automorphism without the identity is not closed.
        let lone = aut.iter().find(|a| a.images() != v.elements()).unwrap().clone();
        assert!(matches!(k_normalizer(&s4, &v, &[lone]), Err(Error::NotClosed(_))));
    }

    #[test]
    fn chain_stabilizer_gives_chain_normalizer() {
        let s4 = builtin::symmetric(4).unwrap();
        let d8 = s4.sylow(Prime::new(2).unwrap());
        let v = s4.generate(&[s4.find(&[1, 0, 3, 2]).unwrap(), s4.find(&[2, 3, 0, 1]).unwrap()]);
        assert!(v.is_subgroup_of(&d8));
        let k = chain_stabilizer(&s4, &[v.clone(), d8.clone()]).unwrap();
        assert_eq!(k_normalizer(&s4, &d8, &k).unwrap(), s4.chain_normalizer(&[v, d8]));
    }

    #[test]
    fn homomorphism_from_generators_checks_relations() {
        let s3 = builtin::symmetric(3).unwrap();
        let whole = s3.whole();
        let gens = whole.gens().to_vec();
        let hom = GroupHom::from_generator_images(&s3, &whole, &whole, &gens, &gens).unwrap();
        assert!(hom.is_injective());
        // Sending every generator to a 3-cycle breaks an order-2 relation.
        let c = s3.find(&[1, 2, 0]).unwrap();
        let bad = vec![c; gens.len()];
        assert!(GroupHom::from_generator_images(&s3, &whole, &whole, &gens, &bad).is_err());
        let triv = vec![0; gens.len()];
        let t = GroupHom::from_generator_images(&s3, &whole, &whole, &gens, &triv).unwrap();
        assert!(!t.is_injective());
        assert_eq!(t.kernel(&s3), whole);
    }
}

use std::collections::HashMap;
use std::sync::Arc;

use super::system::FusionSystem;
use crate::category::{poset_category, FiniteCategory, ObjId};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup, SubgroupChain};

/// Largest number of chains enumerated before giving up.
pub const MAX_CHAINS: usize = 20_000;

/// An F-conjugacy class of strict chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainClass {
    /// Fully normalized member, least chain among ties.
    pub representative: SubgroupChain,
    pub members: Vec<SubgroupChain>,
}

/// The poset category of F-conjugacy classes of strict chains of subgroups
/// drawn from a union of F-classes, with `[σ] -> [τ]` when `τ` is
/// F-conjugate to a subchain of `σ`.
#[derive(Clone, Debug)]
pub struct ChainClassCategory {
    group: Arc<FiniteGroup>,
    ambient: Subgroup,
    sylow: Subgroup,
    classes: Vec<ChainClass>,
    category: Arc<FiniteCategory>,
}

impl FusionSystem {
    /// `s̄d(F^c)`.
    pub fn chain_category(&self) -> Result<ChainClassCategory> {
        self.chain_category_on(&self.centric_classes())
    }

    /// Chains whose members lie in the given F-classes.
    pub fn chain_category_on(&self, classes: &[usize]) -> Result<ChainClassCategory> {
        let g = self.group();
        let s = self.sylow();
        let mut allowed: Vec<Subgroup> = classes.iter().flat_map(|&c| self.class(c).members.iter().cloned()).collect();
        allowed.sort_by(|a, b| (a.order(), a).cmp(&(b.order(), b)));
        let chains = strict_chains(&allowed)?;
        let index: HashMap<&SubgroupChain, usize> = chains.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut seen = vec![false; chains.len()];
        let mut out = Vec::new();
        for i in 0..chains.len() {
            if seen[i] {
                continue;
            }
            let mut members = Vec::new();
            for &a in self.ambient().elements() {
                let c = chains[i].conjugate(g, a);
                if let Some(&j) = index.get(&c) {
                    if !seen[j] {
                        seen[j] = true;
                        members.push(c);
                    }
                }
            }
            members.sort();
            let representative = members
                .iter()
                .max_by(|x, y| {
                    let nx = g.chain_normalizer(x.members()).intersect(g, s).order();
                    let ny = g.chain_normalizer(y.members()).intersect(g, s).order();
                    nx.cmp(&ny).then_with(|| y.cmp(x))
                })
                .expect("classes are nonempty")
                .clone();
            out.push(ChainClass { representative, members });
        }
        out.sort_by(|a, b| (a.representative.len(), &a.representative).cmp(&(b.representative.len(), &b.representative)));
        let labels = out.iter().map(|c| describe_chain(g, &c.representative)).collect();
        let faces: Vec<Vec<bool>> = out
            .iter()
            .map(|sigma| {
                let subs = sigma.representative.subchains();
                out.iter().map(|tau| subs.iter().any(|x| tau.members.contains(x))).collect()
            })
            .collect();
        let category = poset_category("sd(F)", labels, |i, j| faces[i][j])?;
        Ok(ChainClassCategory {
            group: g.clone(),
            ambient: self.ambient().clone(),
            sylow: s.clone(),
            classes: out,
            category: Arc::new(category),
        })
    }
}

fn strict_chains(sorted: &[Subgroup]) -> Result<Vec<SubgroupChain>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..sorted.len()).map(|i| vec![i]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().expect("nonempty");
        for j in last + 1..sorted.len() {
            if sorted[last].is_proper_subgroup_of(&sorted[j]) {
                let mut d = c.clone();
                d.push(j);
                stack.push(d);
            }
        }
        out.push(SubgroupChain::new(c.iter().map(|&i| sorted[i].clone()).collect())?);
        if out.len() > MAX_CHAINS {
            return Err(Error::SizeBound { what: "number of chains", limit: MAX_CHAINS });
        }
    }
    Ok(out)
}

pub fn describe_chain(group: &FiniteGroup, chain: &SubgroupChain) -> String {
    chain.members().iter().map(|h| h.describe(group)).collect::<Vec<_>>().join(" < ")
}

impl ChainClassCategory {
    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn classes(&self) -> &[ChainClass] {
        &self.classes
    }

    pub fn representative(&self, x: ObjId) -> &SubgroupChain {
        &self.classes[x].representative
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `N_S(σ)` for the representative of `x`.
    pub fn sylow_normalizer(&self, x: ObjId) -> Subgroup {
        self.group.chain_normalizer(self.representative(x).members()).intersect(&self.group, &self.sylow)
    }

    /// `N_A(σ)` for the representative of `x`.
    pub fn normalizer(&self, x: ObjId) -> Subgroup {
        self.group.chain_normalizer(self.representative(x).members()).intersect(&self.group, &self.ambient)
    }

    /// For a morphism `σ -> τ`: the least `g = h a^-1` such that
    /// `a τ a^-1` is a subchain of `σ`, `h ∈ N_A(τ)` and
    /// `g N_S(σ) g^-1 ≤ N_S(τ)`. Conjugation by `g` maps that subchain
    /// onto `τ`.
    pub fn face_conjugator(&self, from: ObjId, to: ObjId) -> Result<Elem> {
        let g = &self.group;
        let sigma = self.representative(from);
        let tau = self.representative(to);
        let subs = sigma.subchains();
        let ns = self.sylow_normalizer(from);
        let nt = self.sylow_normalizer(to);
        let na = self.normalizer(to);
        for &a in self.ambient.elements() {
            if !subs.contains(&tau.conjugate(g, a)) {
                continue;
            }
            let moved = g.conjugate(g.inv(a), &ns);
            if let Some(&h) = na.elements().iter().find(|&&h| g.conjugate(h, &moved).is_subgroup_of(&nt)) {
                return Ok(g.mul(h, g.inv(a)));
            }
            return Err(Error::Construction(format!(
                "N_S of {} is not Sylow in its normalizer",
                describe_chain(g, tau)
            )));
        }
        Err(Error::Input(format!("no face from object {from} to object {to}")))
    }
}

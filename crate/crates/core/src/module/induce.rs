use std::sync::Arc;

use super::catmodule::CatModule;
use crate::category::{CatFunctor, GroupCategory, GroupCategoryKind, ObjId};
use crate::error::{Error, Result};
use crate::linalg::{EchelonSpace, FpMatrix};

/// `Ind_F M` together with the quotient presentation at every object:
/// `(Ind_F M)(e) = (⊕_y M(y) ⊗ F_p Mor(e, F y)) / J_e`.
pub struct Induced {
    pub module: CatModule,
    // per target object: block offset of each source object, and J_e
    offsets: Vec<Vec<usize>>,
    relations: Vec<EchelonSpace>,
    functor: CatFunctor,
    source_dims: Vec<usize>,
}

impl Induced {
    /// Class of `m ⊗ f` in `(Ind M)(e)`, for `m ∈ M(y)` and `f: e -> F y`.
    pub fn class_of(&self, e: ObjId, y: ObjId, m: &[u8], f: usize) -> Vec<u8> {
        let d = self.functor.target();
        let fy = self.functor.object(y);
        let width = d.hom(e, fy).len();
        let mut v = vec![0u8; self.relations[e].ambient_dim()];
        let pos = d.hom_position(f);
        for (i, &c) in m.iter().enumerate() {
            v[self.offsets[e][y] + i * width + pos] = c;
        }
        self.relations[e].quotient_coords(&v)
    }

    pub fn source_dim(&self, y: ObjId) -> usize {
        self.source_dims[y]
    }
}

/// Left Kan extension along `functor` by the explicit quotient formula.
pub fn induce(functor: &CatFunctor, m: &CatModule) -> Induced {
    let c = functor.source();
    let d = functor.target();
    let p = m.prime();
    let nd = d.num_objects();
    let mut offsets = Vec::with_capacity(nd);
    let mut relations = Vec::with_capacity(nd);
    for e in 0..nd {
        let mut off = Vec::with_capacity(c.num_objects());
        let mut total = 0;
        for y in 0..c.num_objects() {
            off.push(total);
            total += m.dim(y) * d.hom(e, functor.object(y)).len();
        }
        let mut j = EchelonSpace::new(p, total);
        for a in 0..c.num_morphisms() {
            let (y, y2) = (c.source(a), c.target(a));
            let (fy, fy2) = (functor.object(y), functor.object(y2));
            let (w, w2) = (d.hom(e, fy).len(), d.hom(e, fy2).len());
            let ma = m.action(a);
            let fa = functor.morphism(a);
            for i2 in 0..m.dim(y2) {
                for &f in d.hom(e, fy) {
                    let pos = d.hom_position(f);
                    let mut v = vec![0u8; total];
                    for i in 0..m.dim(y) {
                        let coeff = ma.get(i2, i);
                        if coeff != 0 {
                            v[off[y] + i * w + pos] = coeff;
                        }
                    }
                    let g = d.compose(fa, f);
                    let at = off[y2] + i2 * w2 + d.hom_position(g);
                    v[at] = p.sub(v[at], 1);
                    j.insert(&v);
                }
            }
        }
        offsets.push(off);
        relations.push(j);
    }
    let dims: Vec<usize> = relations.iter().map(|j| j.ambient_dim() - j.dim()).collect();
    let action = (0..d.num_morphisms())
        .map(|b| {
            let (e2, e) = (d.source(b), d.target(b));
            let mut mat = FpMatrix::zeros(p, dims[e], dims[e2]);
            for (row, basis) in relations[e].complement_basis().iter().enumerate() {
                let col = basis.iter().position(|&x| x == 1).expect("standard basis vector");
                // decode col = off[y] + i * w + pos
                let block = |y: ObjId| m.dim(y) * d.hom(e, functor.object(y)).len();
                let y = (0..c.num_objects())
                    .find(|&y| offsets[e][y] <= col && col < offsets[e][y] + block(y))
                    .expect("column lies in some block");
                let fy = functor.object(y);
                let w = d.hom(e, fy).len();
                let local = col - offsets[e][y];
                let (i, pos) = (local / w, local % w);
                let f = d.hom(e, fy)[pos];
                let g = d.compose(f, b);
                let w2 = d.hom(e2, fy).len();
                let mut v = vec![0u8; relations[e2].ambient_dim()];
                v[offsets[e2][y] + i * w2 + d.hom_position(g)] = 1;
                let coords = relations[e2].quotient_coords(&v);
                mat.row_mut(row).copy_from_slice(&coords);
            }
            mat
        })
        .collect();
    let module = CatModule::new(d.clone(), p, dims, action).expect("induced module has consistent shapes");
    Induced {
        module,
        offsets,
        relations,
        functor: functor.clone(),
        source_dims: m.dims().to_vec(),
    }
}

/// `Ind_pr M` for the projection from an orbit category to the fusion
/// orbit category on the same objects: `M(K)` modulo the action of
/// `C_G(K)`, with morphisms acting through any lift.
pub fn induce_along_projection(orbit: &GroupCategory, fusion_orbit: &GroupCategory, m: &CatModule) -> Result<CatModule> {
    if orbit.kind() != GroupCategoryKind::Orbit || fusion_orbit.kind() != GroupCategoryKind::FusionOrbit {
        return Err(Error::Input("projection goes from an orbit to a fusion orbit category".into()));
    }
    if orbit.objects() != fusion_orbit.objects() || orbit.ambient() != fusion_orbit.ambient() {
        return Err(Error::Input("projection needs the same objects on both sides".into()));
    }
    let g = orbit.group();
    let p = m.prime();
    let oc = orbit.category();
    let fc = fusion_orbit.category();
    let coinvariant_relations: Vec<EchelonSpace> = orbit
        .objects()
        .iter()
        .enumerate()
        .map(|(x, k)| {
            let c = g.centralizer(k).intersect(g, orbit.ambient());
            let mut j = EchelonSpace::new(p, m.dim(x));
            for &z in c.gens() {
                let f = orbit.morphism_for(x, x, z).expect("centralizing elements normalize");
                let a = m.action(f);
                for r in 0..m.dim(x) {
                    let mut v = a.row(r).to_vec();
                    v[r] = p.sub(v[r], 1);
                    j.insert(&v);
                }
            }
            j
        })
        .collect();
    let dims: Vec<usize> = coinvariant_relations.iter().map(|j| j.ambient_dim() - j.dim()).collect();
    let action = (0..fc.num_morphisms())
        .map(|b| {
            let (x, y) = (fc.source(b), fc.target(b));
            let lift = orbit
                .morphism_for(x, y, fusion_orbit.token(b))
                .expect("fusion orbit token transports");
            let a = m.action(lift);
            let mut mat = FpMatrix::zeros(p, dims[y], dims[x]);
            for (row, basis) in coinvariant_relations[y].complement_basis().iter().enumerate() {
                let image = a.apply(basis);
                mat.row_mut(row).copy_from_slice(&coinvariant_relations[x].quotient_coords(&image));
            }
            mat
        })
        .collect();
    debug_assert_eq!(oc.num_objects(), fc.num_objects());
    CatModule::new(Arc::clone(fc), p, dims, action)
}

/// Dimensions of `Ind` along `i_H^G: O_{C|H}(H) -> O_C(G)`:
/// at `K`, the sum of `dim M(u^-1 K u)` over cosets `uH` fixed by `K`.
pub fn induced_dims_along_subgroup(small: &GroupCategory, big: &GroupCategory, m: &CatModule) -> Vec<usize> {
    let g = big.group();
    let h = small.ambient();
    let mut coset_reps = Vec::new();
    let mut seen = crate::group::ElemSet::new(g.order());
    for u in big.ambient().elements().iter().copied() {
        if seen.contains(u) {
            continue;
        }
        for &x in h.elements() {
            seen.insert(g.mul(u, x));
        }
        coset_reps.push(u);
    }
    big.objects()
        .iter()
        .map(|k| {
            coset_reps
                .iter()
                .filter_map(|&u| {
                    let conj = g.conjugate(g.inv(u), k);
                    conj.is_subgroup_of(h).then(|| small.locate(&conj).map_or(0, |(x, _)| m.dim(x)))
                })
                .sum()
        })
        .collect()
}

/// Dimensions of `Ind` along `j_H^G`: at `K`, the sum of `dim M(f(K))`
/// over `[f] ∈ H \ N_G(K, H) / C_G(K)`.
pub fn induced_dims_along_fusion_subgroup(small: &GroupCategory, big: &GroupCategory, m: &CatModule) -> Result<Vec<usize>> {
    let g = big.group();
    let h = small.ambient();
    big.objects()
        .iter()
        .map(|k| {
            let t: Vec<_> = g.transporter(k, h).into_iter().filter(|&x| big.ambient().contains(x)).collect();
            let c = g.centralizer(k).intersect(g, big.ambient());
            let reps = g.double_cosets(h, &t, &c)?;
            Ok(reps
                .iter()
                .map(|&x| small.locate(&g.conjugate(x, k)).map_or(0, |(y, _)| m.dim(y)))
                .sum())
        })
        .collect()
}

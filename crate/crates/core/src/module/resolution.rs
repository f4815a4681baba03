use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::catmodule::CatModule;
use crate::category::{FiniteCategory, MorId, ObjId};
use crate::error::{Error, Result};
use crate::linalg::{EchelonSpace, FpMatrix, Prime};

/// One free module `⊕_j F_p Mor(?, x_j)` of a resolution together with the
/// image of each generator in the previous term (or in the resolved
/// module, for degree 0).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FreeLevel {
    pub generators: Vec<ObjId>,
    pub images: Vec<Vec<u8>>,
}

/// Layout of a free module: at object `y`, the block of generator `j`
/// is `Mor(y, x_j)` in hom-set order.
#[derive(Clone, Debug)]
pub struct FreeModule {
    generators: Vec<ObjId>,
    // offsets[y][j], with a final total entry
    offsets: Vec<Vec<usize>>,
}

impl FreeModule {
    pub fn new(cat: &FiniteCategory, generators: Vec<ObjId>) -> Self {
        let offsets = (0..cat.num_objects())
            .map(|y| {
                let mut acc = 0;
                let mut row = Vec::with_capacity(generators.len() + 1);
                for &x in &generators {
                    row.push(acc);
                    acc += cat.hom(y, x).len();
                }
                row.push(acc);
                row
            })
            .collect();
        FreeModule { generators, offsets }
    }

    pub fn generators(&self) -> &[ObjId] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn dim(&self, y: ObjId) -> usize {
        *self.offsets[y].last().expect("offset table has a total")
    }

    pub fn offset(&self, y: ObjId, j: usize) -> usize {
        self.offsets[y][j]
    }

    /// The basis vector of generator `j` at its own object (the identity).
    pub fn generator_vector(&self, cat: &FiniteCategory, j: usize) -> Vec<u8> {
        let x = self.generators[j];
        let mut v = vec![0u8; self.dim(x)];
        v[self.offsets[x][j] + cat.hom_position(cat.identity(x))] = 1;
        v
    }

    /// `v · F(a)` for `a: y -> z` and `v` in `F(z)`: each basis element
    /// `f ∈ Mor(z, x_j)` goes to `f ∘ a`.
    pub fn act(&self, cat: &FiniteCategory, p: Prime, v: &[u8], a: MorId) -> Vec<u8> {
        let (y, z) = (cat.source(a), cat.target(a));
        let mut out = vec![0u8; self.dim(y)];
        for (j, &x) in self.generators.iter().enumerate() {
            let base = self.offsets[z][j];
            for (pos, &f) in cat.hom(z, x).iter().enumerate() {
                let c = v[base + pos];
                if c != 0 {
                    let at = self.offsets[y][j] + cat.hom_position(cat.compose(f, a));
                    out[at] = p.add(out[at], c);
                }
            }
        }
        out
    }

    /// Splits a vector of `F(y)` into `(generator, morphism, coefficient)`.
    pub fn terms<'a>(&'a self, cat: &'a FiniteCategory, y: ObjId, v: &'a [u8]) -> impl Iterator<Item = (usize, MorId, u8)> + 'a {
        self.generators.iter().enumerate().flat_map(move |(j, &x)| {
            let base = self.offsets[y][j];
            cat.hom(y, x)
                .iter()
                .enumerate()
                .filter_map(move |(pos, &f)| (v[base + pos] != 0).then_some((j, f, v[base + pos])))
        })
    }
}

/// Objects ordered so that an object comes before everything that maps
/// into it without a map back ("targets first").
pub fn processing_order(cat: &FiniteCategory) -> Vec<ObjId> {
    let n = cat.num_objects();
    let reach = |a: ObjId, b: ObjId| !cat.hom(a, b).is_empty();
    let above: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&z| z != x && reach(x, z) && !reach(z, x)).count())
        .collect();
    let mut order: Vec<ObjId> = (0..n).collect();
    order.sort_by_key(|&x| (above[x], x));
    order
}

/// A generating set of the submodule `K ⊆ V` given by bases `kernel[y]`,
/// where `act(v, f)` is the action of `V`. Greedy in processing order,
/// then pruned in reverse order of discovery.
pub fn generators_of_submodule(
    cat: &FiniteCategory,
    p: Prime,
    dims: &[usize],
    kernel: &[FpMatrix],
    act: &dyn Fn(&[u8], MorId) -> Vec<u8>,
) -> Vec<(ObjId, Vec<u8>)> {
    let mut spans: Vec<EchelonSpace> = dims.iter().map(|&d| EchelonSpace::new(p, d)).collect();
    let mut gens: Vec<(ObjId, Vec<u8>)> = Vec::new();
    for x in processing_order(cat) {
        for r in 0..kernel[x].rows() {
            let v = kernel[x].row(r);
            if spans[x].contains(v) {
                continue;
            }
            for y in 0..cat.num_objects() {
                for &f in cat.hom(y, x) {
                    spans[y].insert(&act(v, f));
                }
            }
            gens.push((x, v.to_vec()));
        }
    }
    prune_generators(cat, p, dims, gens, act)
}

/// Drops, in reverse order, every generator lying in the submodule
/// generated by the remaining ones.
pub fn prune_generators(
    cat: &FiniteCategory,
    p: Prime,
    dims: &[usize],
    mut gens: Vec<(ObjId, Vec<u8>)>,
    act: &dyn Fn(&[u8], MorId) -> Vec<u8>,
) -> Vec<(ObjId, Vec<u8>)> {
    let mut j = gens.len();
    while j > 0 {
        j -= 1;
        let (x, ref v) = gens[j];
        let mut span = EchelonSpace::new(p, dims[x]);
        for (i, (xi, vi)) in gens.iter().enumerate() {
            if i != j {
                for &f in cat.hom(x, *xi) {
                    span.insert(&act(vi, f));
                }
            }
        }
        if span.contains(v) {
            gens.remove(j);
        }
    }
    gens
}

/// A generating set of `M` (closure of the spans under the action is `M`).
pub fn minimal_generators(m: &CatModule) -> Vec<(ObjId, Vec<u8>)> {
    let cat = m.base();
    let full: Vec<FpMatrix> = m.dims().iter().map(|&d| FpMatrix::identity(m.prime(), d)).collect();
    generators_of_submodule(cat, m.prime(), m.dims(), &full, &|v, f| m.act(v, f))
}

/// The submodule of `m` generated by `gens`, as a basis per object.
pub fn generated_submodule(m: &CatModule, gens: &[(ObjId, Vec<u8>)]) -> Vec<EchelonSpace> {
    let cat = m.base();
    let mut spans: Vec<EchelonSpace> = m.dims().iter().map(|&d| EchelonSpace::new(m.prime(), d)).collect();
    for (x, v) in gens {
        for y in 0..cat.num_objects() {
            for &f in cat.hom(y, *x) {
                spans[y].insert(&m.act(v, f));
            }
        }
    }
    spans
}

/// A projective resolution `... -> P_1 -> P_0 -> M` by sums of
/// representables, computed through a fixed number of terms.
#[derive(Clone, Debug)]
pub struct ProjResolution {
    base: Arc<FiniteCategory>,
    p: Prime,
    module: CatModule,
    levels: Vec<FreeLevel>,
    free: Vec<FreeModule>,
    // maps[n][y]: rows are the images of the basis of P_n(y) in P_{n-1}(y) (or M(y))
    maps: Vec<Vec<FpMatrix>>,
}

impl ProjResolution {
    /// Resolves `m` through `P_0, ..., P_len`.
    pub fn new(m: &CatModule, len: usize) -> Self {
        let cat = m.base().clone();
        let p = m.prime();
        let mut res = ProjResolution { base: cat.clone(), p, module: m.clone(), levels: Vec::new(), free: Vec::new(), maps: Vec::new() };
        let gens0 = minimal_generators(m);
        res.push_level(gens0);
        for _ in 0..len {
            let n = res.levels.len() - 1;
            let free = &res.free[n];
            let kernels: Vec<FpMatrix> = res.maps[n].iter().map(|d| d.left_kernel_basis()).collect();
            let dims: Vec<usize> = (0..cat.num_objects()).map(|y| free.dim(y)).collect();
            let free_c = free.clone();
            let gens = generators_of_submodule(&cat, p, &dims, &kernels, &|v, f| free_c.act(&cat, p, v, f));
            res.push_level(gens);
        }
        res
    }

    /// Rebuilds a resolution from stored generator data, checking that it
    /// is a complex over `m` and exact.
    pub fn from_levels(m: &CatModule, levels: Vec<FreeLevel>) -> Result<Self> {
        let cat = m.base().clone();
        let mut res = ProjResolution { base: cat, p: m.prime(), module: m.clone(), levels: Vec::new(), free: Vec::new(), maps: Vec::new() };
        for level in levels {
            if level.generators.len() != level.images.len()
                || level.generators.iter().any(|&x| x >= res.base.num_objects())
            {
                return Err(Error::Cache("malformed resolution level".into()));
            }
            let expected: Vec<usize> = level.generators.iter().map(|&x| res.previous_dim(x)).collect();
            if level.images.iter().zip(&expected).any(|(v, &d)| v.len() != d) {
                return Err(Error::Cache("resolution image has the wrong length".into()));
            }
            res.push_level(level.generators.into_iter().zip(level.images).collect());
        }
        res.check_exact()?;
        Ok(res)
    }

    fn previous_dim(&self, y: ObjId) -> usize {
        match self.free.last() {
            None => self.module.dim(y),
            Some(f) => f.dim(y),
        }
    }

    fn previous_act(&self, v: &[u8], f: MorId) -> Vec<u8> {
        match self.free.last() {
            None => self.module.act(v, f),
            Some(fm) => fm.act(&self.base, self.p, v, f),
        }
    }

    fn push_level(&mut self, gens: Vec<(ObjId, Vec<u8>)>) {
        let cat = self.base.clone();
        let free = FreeModule::new(&cat, gens.iter().map(|g| g.0).collect());
        let maps = (0..cat.num_objects())
            .map(|y| {
                let mut rows = Vec::with_capacity(free.dim(y));
                for (x, v) in &gens {
                    for &f in cat.hom(y, *x) {
                        rows.push(self.previous_act(v, f));
                    }
                }
                FpMatrix::from_residue_rows(self.p, self.previous_dim(y), rows)
            })
            .collect();
        let (generators, images) = gens.into_iter().unzip();
        self.levels.push(FreeLevel { generators, images });
        self.free.push(free);
        self.maps.push(maps);
    }

    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.base
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn module(&self) -> &CatModule {
        &self.module
    }

    /// Index of the last computed term.
    pub fn length(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FreeLevel {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[FreeLevel] {
        &self.levels
    }

    pub fn free(&self, n: usize) -> &FreeModule {
        &self.free[n]
    }

    /// Matrix of `P_n(y) -> P_{n-1}(y)` (or `P_0(y) -> M(y)`).
    pub fn map(&self, n: usize, y: ObjId) -> &FpMatrix {
        &self.maps[n][y]
    }

    /// Number of representable summands per degree.
    pub fn ranks(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.generators.len()).collect()
    }

    /// Surjectivity onto `M` and exactness at every computed interior term,
    /// by rank counts.
    pub fn check_exact(&self) -> Result<()> {
        for y in 0..self.base.num_objects() {
            if self.maps[0][y].rank() != self.module.dim(y) {
                return Err(Error::ComplexInvariant { degree: 0, reason: format!("augmentation not onto at object {y}") });
            }
            for n in 1..self.levels.len() {
                let image = self.maps[n][y].rank();
                let kernel = self.free[n - 1].dim(y) - self.maps[n - 1][y].rank();
                if !self.maps[n][y].mul(&self.maps[n - 1][y]).is_zero() {
                    return Err(Error::ComplexInvariant { degree: n as i64, reason: "d∘d != 0".into() });
                }
                if image != kernel {
                    return Err(Error::ComplexInvariant {
                        degree: n as i64 - 1,
                        reason: format!("not exact at object {y}: image {image}, kernel {kernel}"),
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{one_object_category, poset_category, subgroup_category};
    use crate::group::builtin;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn cyclic(n: usize) -> Arc<FiniteCategory> {
        Arc::new(one_object_category("C", (0..n).map(|i| i.to_string()).collect(), 0, |a, b| (a + b) % n))
    }

    #[test]
    fn representable_resolves_in_one_step() {
        let cat = Arc::new(poset_category("P", vec!["0".into(), "1".into(), "2".into()], |i, j| i <= j).unwrap());
        for x in 0..3 {
            let m = CatModule::representable(&cat, p(2), x);
            let gens = minimal_generators(&m);
            assert_eq!(gens.len(), 1);
            assert_eq!(gens[0].0, x);
            let res = ProjResolution::new(&m, 3);
            assert_eq!(res.ranks(), vec![1, 0, 0, 0]);
            res.check_exact().unwrap();
        }
    }

    #[test]
    fn zero_module_has_no_generators() {
        let cat = cyclic(3);
        assert!(minimal_generators(&CatModule::zero(&cat, p(3))).is_empty());
    }

    #[test]
    fn cyclic_group_resolution_is_periodic() {
        for q in [2u32, 3, 5] {
            let cat = cyclic(q as usize);
            let res = ProjResolution::new(&CatModule::constant(&cat, p(q)), 5);
            assert_eq!(res.ranks(), vec![1; 6]);
            res.check_exact().unwrap();
        }
    }

    #[test]
    fn dihedral_ranks() {
        let g = builtin::by_name("D8").unwrap();
        let cat = subgroup_category(&g, &g.whole());
        let res = ProjResolution::new(&CatModule::constant(&cat, p(2)), 4);
        assert_eq!(res.ranks(), vec![1, 2, 3, 4, 5]);
        res.check_exact().unwrap();
    }

    #[test]
    fn coprime_group_kernels_are_not_representable() {
        // The kernel of F_3[C_2] -> F_3 is the sign representation:
        // projective, but only covered by another copy of F_3[C_2].
        let cat = cyclic(2);
        let res = ProjResolution::new(&CatModule::constant(&cat, p(3)), 3);
        assert_eq!(res.ranks(), vec![1, 1, 1, 1]);
        res.check_exact().unwrap();
    }

    #[test]
    fn stored_levels_round_trip() {
        let cat = cyclic(3);
        let m = CatModule::constant(&cat, p(3));
        let res = ProjResolution::new(&m, 4);
        let again = ProjResolution::from_levels(&m, res.levels().to_vec()).unwrap();
        assert_eq!(again.ranks(), res.ranks());
        let mut broken = res.levels().to_vec();
        broken[2].images[0] = vec![1, 0, 0];
        assert!(ProjResolution::from_levels(&m, broken).is_err());
    }

    #[test]
    fn pruning_order_does_not_change_size_for_local_algebras() {
        let g = builtin::by_name("D8").unwrap();
        let cat = subgroup_category(&g, &g.whole());
        let m = CatModule::representable(&cat, p(2), 0);
        let full: Vec<FpMatrix> = vec![FpMatrix::identity(p(2), 8)];
        // Every basis vector as a candidate generator, in two orders.
        let mut gens: Vec<(ObjId, Vec<u8>)> = (0..8).map(|r| (0, full[0].row(r).to_vec())).collect();
        let a = prune_generators(&cat, p(2), m.dims(), gens.clone(), &|v, f| m.act(v, f));
        gens.reverse();
        let b = prune_generators(&cat, p(2), m.dims(), gens, &|v, f| m.act(v, f));
        assert_eq!(a.len(), 1);
        assert_eq!(a.len(), b.len());
    }
}

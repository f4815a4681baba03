use std::sync::Arc;

use super::catmodule::CatModule;
use super::resolution::{FreeModule, ProjResolution};
use crate::category::CatFunctor;
use crate::error::{Error, Result};
use crate::linalg::{ChainComplexFp, CohomologyBasis, FpMatrix};

/// Resolves `m` through `P_0, ..., P_d`.
pub fn projective_resolution(m: &CatModule, d: usize) -> ProjResolution {
    ProjResolution::new(m, d)
}

/// The cochain complex `Hom(P_n, N) = ⊕_j N(x_j)` for `n = 0..=top`,
/// using terms `0..=top` of the resolution (so `top <= res.length()`).
pub fn hom_complex(res: &ProjResolution, n: &CatModule, top: usize) -> ChainComplexFp {
    assert!(top <= res.length(), "resolution too short for the requested complex");
    assert!(Arc::ptr_eq(res.base(), n.base()) || **res.base() == **n.base());
    let p = n.prime();
    let cat = res.base();
    let offsets: Vec<Vec<usize>> = (0..=top).map(|k| cochain_offsets(res.free(k), n)).collect();
    let dims: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let mut differentials = Vec::with_capacity(top);
    for k in 0..top {
        // δ^k: C^k -> C^{k+1}, block (j, l) = Σ c N(f) over terms of d(gen_l).
        let upper = res.level(k + 1);
        let free = res.free(k);
        let mut delta = FpMatrix::zeros(p, dims[k], dims[k + 1]);
        for (l, (&x, image)) in upper.generators.iter().zip(&upper.images).enumerate() {
            for (j, f, c) in free.terms(cat, x, image) {
                let nf = n.action(f);
                for r in 0..nf.rows() {
                    for s in 0..nf.cols() {
                        let v = p.mul(c, nf.get(r, s));
                        if v != 0 {
                            delta.add_to(offsets[k][j] + r, offsets[k + 1][l] + s, v);
                        }
                    }
                }
            }
        }
        differentials.push(delta);
    }
    ChainComplexFp::new(p, 0, dims, differentials).expect("Hom of a resolution is a complex")
}

fn cochain_offsets(free: &FreeModule, n: &CatModule) -> Vec<usize> {
    let mut acc = 0;
    let mut out = Vec::with_capacity(free.rank() + 1);
    for &x in free.generators() {
        out.push(acc);
        acc += n.dim(x);
    }
    out.push(acc);
    out
}

/// Dimensions of `Ext^0..=Ext^d(M, N)`.
pub fn ext(m: &CatModule, n: &CatModule, d: usize) -> Result<Vec<usize>> {
    if m.prime() != n.prime() {
        return Err(Error::InvalidPrime(n.prime().get()));
    }
    let res = ProjResolution::new(m, d + 1);
    Ok(ext_from_resolution(&res, n, d))
}

pub fn ext_from_resolution(res: &ProjResolution, n: &CatModule, d: usize) -> Vec<usize> {
    let complex = hom_complex(res, n, d + 1);
    (0..=d as i64).map(|i| complex.cohomology_dim(i)).collect()
}

/// Dimensions of `lim^0..=lim^d N`.
pub fn higher_limits(n: &CatModule, d: usize) -> Vec<usize> {
    let constant = CatModule::constant(n.base(), n.prime());
    ext(&constant, n, d).expect("same prime")
}

/// Cohomology `H^*(C; N) = Ext^*(constant, N)` with chosen bases, kept
/// together with the resolution that produced it.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub resolution: Arc<ProjResolution>,
    pub complex: ChainComplexFp,
    pub bases: Vec<CohomologyBasis>,
}

impl Cohomology {
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.dim()).collect()
    }

    pub fn degree_bound(&self) -> usize {
        self.bases.len() - 1
    }
}

/// `H^0..=H^d(C; N)` from a resolution of the constant module with at least
/// `d + 1` terms beyond degree 0.
pub fn cohomology_with(resolution: Arc<ProjResolution>, n: &CatModule, d: usize) -> Cohomology {
    let complex = hom_complex(&resolution, n, d + 1);
    let bases = (0..=d as i64).map(|i| complex.cohomology(i)).collect();
    Cohomology { resolution, complex, bases }
}

pub fn cohomology(n: &CatModule, d: usize) -> Cohomology {
    let res = ProjResolution::new(&CatModule::constant(n.base(), n.prime()), d + 1);
    cohomology_with(Arc::new(res), n, d)
}

/// Which solution of each lifting equation to use. Different choices give
/// chain maps that differ by a homotopy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LiftChoice {
    #[default]
    Canonical,
    /// Adds every kernel basis vector to each canonical solution.
    Perturbed,
}

/// A chain map `P^C_* -> Res_F P^D_*` over the identity of `Res_F M`,
/// where `res_c` resolves `Res_F M` and `res_d` resolves `M`. Entry
/// `[n][k]` is the image of generator `k` of `P^C_n`, a vector of
/// `P^D_n(F c_k)`.
pub fn comparison_map(
    functor: &CatFunctor,
    res_c: &ProjResolution,
    res_d: &ProjResolution,
    top: usize,
    choice: LiftChoice,
) -> Result<Vec<Vec<Vec<u8>>>> {
    let (c, d) = (functor.source(), functor.target());
    let p = res_d.prime();
    let top = top.min(res_c.length()).min(res_d.length());
    let mut phi: Vec<Vec<Vec<u8>>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let level = res_c.level(n);
        let mut row = Vec::with_capacity(level.generators.len());
        for (&x, image) in level.generators.iter().zip(&level.images) {
            let e = functor.object(x);
            let target = if n == 0 {
                image.clone()
            } else {
                let lower = res_d.free(n - 1);
                let mut acc = vec![0u8; lower.dim(e)];
                for (j, f, coeff) in res_c.free(n - 1).terms(c, x, image) {
                    let moved = lower.act(d, p, &phi[n - 1][j], functor.morphism(f));
                    for (a, b) in acc.iter_mut().zip(moved) {
                        *a = p.add(*a, p.mul(coeff, b));
                    }
                }
                acc
            };
            let map = res_d.map(n, e);
            let mut sol = map.solve(&target).ok_or_else(|| Error::ComplexInvariant {
                degree: n as i64,
                reason: "comparison map does not lift; the target resolution is not exact".into(),
            })?;
            if choice == LiftChoice::Perturbed {
                let kernel = map.left_kernel_basis();
                for r in 0..kernel.rows() {
                    for (a, &b) in sol.iter_mut().zip(kernel.row(r)) {
                        *a = p.add(*a, b);
                    }
                }
            }
            row.push(sol);
        }
        phi.push(row);
    }
    Ok(phi)
}

/// Matrices `H^i(D; N) -> H^i(C; Res_F N)` for `i = 0..=d`, in the bases of
/// `source` (over D) and `target` (over C). Needs resolutions of the
/// constant modules on both sides.
pub fn map_on_cohomology_with(
    functor: &CatFunctor,
    n: &CatModule,
    source: &Cohomology,
    target: &Cohomology,
    d: usize,
    choice: LiftChoice,
) -> Result<Vec<FpMatrix>> {
    let p = n.prime();
    let d = d.min(source.degree_bound()).min(target.degree_bound());
    let res_d = &source.resolution;
    let res_c = &target.resolution;
    let phi = comparison_map(functor, res_c, res_d, d, choice)?;
    let dcat = functor.target();
    let mut out = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let off_d = cochain_offsets(res_d.free(i), n);
        let level_c = res_c.level(i);
        let mut off_c = vec![0];
        for &x in &level_c.generators {
            off_c.push(off_c.last().unwrap() + n.dim(functor.object(x)));
        }
        // pullback: rows index C^i_D, columns C^i_C
        let mut pull = FpMatrix::zeros(p, *off_d.last().unwrap(), *off_c.last().unwrap());
        for (k, &x) in level_c.generators.iter().enumerate() {
            let e = functor.object(x);
            for (j, f, c) in res_d.free(i).terms(dcat, e, &phi[i][k]) {
                let nf = n.action(f);
                for r in 0..nf.rows() {
                    for s in 0..nf.cols() {
                        let v = p.mul(c, nf.get(r, s));
                        if v != 0 {
                            pull.add_to(off_d[j] + r, off_c[k] + s, v);
                        }
                    }
                }
            }
        }
        let reps = &source.bases[i].representatives;
        let images = reps.mul(&pull).row_vecs();
        let coords = target.bases[i].coordinates_many(&images).ok_or_else(|| Error::ComplexInvariant {
            degree: i as i64,
            reason: "pulled-back class is not a cocycle".into(),
        })?;
        out.push(FpMatrix::from_residue_rows(p, target.bases[i].dim(), coords));
    }
    Ok(out)
}

/// `H^i(D; N) -> H^i(C; Res_F N)` for `i = 0..=d`, computing both sides.
pub fn map_on_cohomology(functor: &CatFunctor, n: &CatModule, d: usize) -> Result<Vec<FpMatrix>> {
    let source = cohomology(n, d);
    let target = cohomology(&n.restrict(functor), d);
    map_on_cohomology_with(functor, n, &source, &target, d, LiftChoice::Canonical)
}

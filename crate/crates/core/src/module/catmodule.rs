use std::fmt;
use std::sync::Arc;

use crate::category::{CatFunctor, FiniteCategory, MorId, ObjId};
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Prime};

/// A contravariant functor from a finite category to finite-dimensional
/// F_p-vector spaces.
///
/// For `f: x -> y` the matrix `action(f)` has `dim(y)` rows and `dim(x)`
/// columns and sends a row vector of `M(y)` to `M(x)`. Functoriality reads
/// `M(g ∘ f) = M(g) · M(f)`.
#[derive(Clone)]
pub struct CatModule {
    base: Arc<FiniteCategory>,
    p: Prime,
    dims: Vec<usize>,
    action: Vec<FpMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleViolation {
    Shape { morphism: MorId },
    Identity { object: ObjId },
    Composition { g: MorId, f: MorId },
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleViolation::Shape { morphism } => write!(f, "matrix of morphism {morphism} has the wrong shape"),
            ModuleViolation::Identity { object } => write!(f, "identity at object {object} acts nontrivially"),
            ModuleViolation::Composition { g, f: m } => write!(f, "M({g} ∘ {m}) != M({g}) M({m})"),
        }
    }
}

impl CatModule {
    pub fn new(base: Arc<FiniteCategory>, p: Prime, dims: Vec<usize>, action: Vec<FpMatrix>) -> Result<Self> {
        if dims.len() != base.num_objects() || action.len() != base.num_morphisms() {
            return Err(Error::Dimension("module data does not match the category".into()));
        }
        let m = CatModule { base, p, dims, action };
        if let Some(f) = (0..m.base.num_morphisms()).find(|&f| !m.shape_ok(f)) {
            return Err(Error::Dimension(format!("morphism {f} acts by a matrix of the wrong shape")));
        }
        Ok(m)
    }

    fn shape_ok(&self, f: MorId) -> bool {
        let a = &self.action[f];
        a.prime() == self.p
            && a.rows() == self.dims[self.base.target(f)]
            && a.cols() == self.dims[self.base.source(f)]
    }

    pub fn zero(base: &Arc<FiniteCategory>, p: Prime) -> Self {
        let dims = vec![0; base.num_objects()];
        let action = (0..base.num_morphisms()).map(|_| FpMatrix::zeros(p, 0, 0)).collect();
        CatModule { base: base.clone(), p, dims, action }
    }

    /// The constant functor: F_p everywhere, every morphism acting by 1.
    pub fn constant(base: &Arc<FiniteCategory>, p: Prime) -> Self {
        let dims = vec![1; base.num_objects()];
        let action = (0..base.num_morphisms()).map(|_| FpMatrix::identity(p, 1)).collect();
        CatModule { base: base.clone(), p, dims, action }
    }

    /// `F_p Mor(?, x)`: basis at `y` is `Mor(y, x)`, acting by precomposition.
    pub fn representable(base: &Arc<FiniteCategory>, p: Prime, x: ObjId) -> Self {
        let dims: Vec<usize> = (0..base.num_objects()).map(|y| base.hom(y, x).len()).collect();
        let action = (0..base.num_morphisms())
            .map(|a| {
                let (y, z) = (base.source(a), base.target(a));
                let mut m = FpMatrix::zeros(p, dims[z], dims[y]);
                for (i, &f) in base.hom(z, x).iter().enumerate() {
                    m.set(i, base.hom_position(base.compose(f, a)), 1);
                }
                m
            })
            .collect();
        CatModule { base: base.clone(), p, dims, action }
    }

    /// A module concentrated on the isomorphism class of `x`: the given
    /// representation of `Aut(x)` (one matrix per element of `Mor(x, x)`, in
    /// hom-set order, with `rho(b ∘ a) = rho(b) rho(a)`) transported along
    /// chosen isomorphisms, and zero on all other morphisms.
    pub fn atomic(base: &Arc<FiniteCategory>, p: Prime, x: ObjId, rho: &[FpMatrix]) -> Result<Self> {
        let auts = base.hom(x, x);
        if rho.len() != auts.len() {
            return Err(Error::Dimension("one matrix per endomorphism is required".into()));
        }
        let d = rho.first().map_or(0, |m| m.rows());
        if rho.iter().any(|m| m.rows() != d || m.cols() != d || m.prime() != p) {
            return Err(Error::Dimension("representation matrices must be square of one size".into()));
        }
        let n = base.num_objects();
        // theta[y]: y -> x for objects isomorphic to x.
        let theta: Vec<Option<MorId>> = (0..n)
            .map(|y| base.hom(y, x).iter().copied().find(|&f| base.is_iso(f)))
            .collect();
        let dims: Vec<usize> = theta.iter().map(|t| if t.is_some() { d } else { 0 }).collect();
        let action = (0..base.num_morphisms())
            .map(|a| {
                let (y, z) = (base.source(a), base.target(a));
                match (theta[y], theta[z]) {
                    (Some(ty), Some(tz)) if base.is_iso(a) => {
                        let back = base.inverse(ty).expect("theta is an isomorphism");
                        let e = base.compose(tz, base.compose(a, back));
                        rho[base.hom_position(e)].clone()
                    }
                    _ => FpMatrix::zeros(p, dims[z], dims[y]),
                }
            })
            .collect();
        let m = CatModule::new(base.clone(), p, dims, action)?;
        if let Err(v) = m.check() {
            return Err(Error::Construction(format!("representation is not functorial: {v}")));
        }
        Ok(m)
    }

    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.base
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self, x: ObjId) -> usize {
        self.dims[x]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn action(&self, f: MorId) -> &FpMatrix {
        &self.action[f]
    }

    /// `v · M(f)` for `v` in `M(target f)`.
    pub fn act(&self, v: &[u8], f: MorId) -> Vec<u8> {
        self.action[f].apply(v)
    }

    /// Exhaustive functoriality check.
    pub fn check(&self) -> std::result::Result<(), ModuleViolation> {
        let c = &self.base;
        for f in 0..c.num_morphisms() {
            if !self.shape_ok(f) {
                return Err(ModuleViolation::Shape { morphism: f });
            }
        }
        for x in 0..c.num_objects() {
            if self.action[c.identity(x)] != FpMatrix::identity(self.p, self.dims[x]) {
                return Err(ModuleViolation::Identity { object: x });
            }
        }
        for f in 0..c.num_morphisms() {
            for &g in c.outgoing(c.target(f)) {
                if self.action[c.compose(g, f)] != self.action[g].mul(&self.action[f]) {
                    return Err(ModuleViolation::Composition { g, f });
                }
            }
        }
        Ok(())
    }

    /// `Res_F M = M ∘ F` for `F: C -> D` and `M` over `D`.
    pub fn restrict(&self, functor: &CatFunctor) -> CatModule {
        let c = functor.source();
        let dims = (0..c.num_objects()).map(|x| self.dims[functor.object(x)]).collect();
        let action = (0..c.num_morphisms()).map(|f| self.action[functor.morphism(f)].clone()).collect();
        CatModule { base: c.clone(), p: self.p, dims, action }
    }

    pub fn direct_sum(&self, other: &CatModule) -> CatModule {
        assert_eq!(self.p, other.p);
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        CatModule { base: self.base.clone(), p: self.p, dims, action }
    }

    /// Offsets of each object's block in `⊕_x M(x)`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len() + 1);
        let mut acc = 0;
        out.push(0);
        for &d in &self.dims {
            acc += d;
            out.push(acc);
        }
        out
    }

    /// `lim M`: families `(m_x)` with `m_y · M(a) = m_x` for every `a: x -> y`.
    /// Rows of the result are a basis inside `⊕_x M(x)`.
    pub fn lim0(&self) -> FpMatrix {
        let c = &self.base;
        let offsets = self.offsets();
        let total = self.total_dim();
        let eq_count: usize = (0..c.num_morphisms())
            .filter(|&f| !c.is_identity(f))
            .map(|f| self.dims[c.source(f)])
            .sum();
        let mut system = FpMatrix::zeros(self.p, total, eq_count);
        let mut col = 0;
        for f in 0..c.num_morphisms() {
            if c.is_identity(f) {
                continue;
            }
            let (x, y) = (c.source(f), c.target(f));
            let a = &self.action[f];
            for b in 0..self.dims[x] {
                for r in 0..self.dims[y] {
                    system.add_to(offsets[y] + r, col + b, a.get(r, b));
                }
                system.add_to(offsets[x] + b, col + b, self.p.neg(1));
            }
            col += self.dims[x];
        }
        system.left_kernel_basis()
    }

    pub fn lim0_dim(&self) -> usize {
        self.lim0().rows()
    }
}

impl fmt::Debug for CatModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CatModule(over {}, p = {}, dims {:?})", self.base.name(), self.p.get(), self.dims)
    }
}

impl PartialEq for CatModule {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.dims == other.dims && self.action == other.action
    }
}

/// Natural transformations `M -> N` as the rows of a matrix over the
/// concatenated coordinates of the blocks `T_x` (each `dim M(x) x dim N(x)`,
/// row-major).
pub fn hom_space(m: &CatModule, n: &CatModule) -> FpMatrix {
    assert_eq!(m.p, n.p);
    let c = &m.base;
    let p = m.p;
    let mut var_offset = Vec::with_capacity(c.num_objects());
    let mut vars = 0;
    for x in 0..c.num_objects() {
        var_offset.push(vars);
        vars += m.dims[x] * n.dims[x];
    }
    let eq_count: usize = (0..c.num_morphisms())
        .filter(|&f| !c.is_identity(f))
        .map(|f| m.dims[c.target(f)] * n.dims[c.source(f)])
        .sum();
    let mut system = FpMatrix::zeros(p, vars, eq_count);
    let mut col = 0;
    for f in 0..c.num_morphisms() {
        if c.is_identity(f) {
            continue;
        }
        let (x, y) = (c.source(f), c.target(f));
        let (ma, na) = (&m.action[f], &n.action[f]);
        let (mx, nx, my, ny) = (m.dims[x], n.dims[x], m.dims[y], n.dims[y]);
        // M(f) T_x - T_y N(f) = 0, an (my x nx) system.
        for a in 0..my {
            for b in 0..nx {
                let e = col + a * nx + b;
                for cc in 0..mx {
                    let v = ma.get(a, cc);
                    if v != 0 {
                        system.add_to(var_offset[x] + cc * nx + b, e, v);
                    }
                }
                for cc in 0..ny {
                    let v = na.get(cc, b);
                    if v != 0 {
                        system.add_to(var_offset[y] + a * ny + cc, e, p.neg(v));
                    }
                }
            }
        }
        col += my * nx;
    }
    system.left_kernel_basis()
}

pub fn hom_dim(m: &CatModule, n: &CatModule) -> usize {
    hom_space(m, n).rows()
}

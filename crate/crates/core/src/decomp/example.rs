use std::sync::Arc;

use serde::Serialize;

use super::limits::stable_elements;
use crate::category::one_object_category;
use crate::cohomology::{induced_map, Context};
use crate::error::Result;
use crate::fusion::fusion_system;
use crate::group::{builtin, GroupHom};
use crate::linalg::{FpMatrix, Prime};
use crate::module::{higher_limits, CatModule};

/// One degree of the `C_3 ⋊ Z` example at `p = 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleRow {
    pub n: usize,
    pub dim_h: usize,
    /// Matrix of `a^*` on `H^n(C_3; F_3)`, row by row.
    pub action: Vec<Vec<u8>>,
    /// `[lim^0, lim^1]` over the orbit category: kernel and cokernel of `1 - a^*`.
    pub orbit: [usize; 2],
    /// `lim^0 .. lim^4` over the fusion orbit category, one object with `Aut = C_2`.
    pub fusion_orbit: Vec<usize>,
    /// `dim H^n(F; F_3)` by stable elements.
    pub stable: usize,
    /// 1 when `n ≡ 0, 3 mod 4`, else 0.
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub n_max: usize,
    pub rows: Vec<ExampleRow>,
    pub orbit_matches: bool,
    pub fusion_orbit_vanishes: bool,
    pub stable_matches: bool,
    /// Whether the two sides differ in some degree, so that the projection
    /// does not induce an isomorphism.
    pub projection_fails: bool,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.orbit_matches && self.fusion_orbit_vanishes && self.stable_matches && self.projection_fails
    }
}

fn pattern(n: usize) -> usize {
    usize::from(n.is_multiple_of(4) || n % 4 == 3)
}

/// `G = <a, b | b^3 = 1, a b a^-1 = b^2>` at `p = 3`. The orbit category
/// side uses the two-term resolution `0 -> F_3[G/C_3] -(1-a)-> F_3[G/C_3] -> F_3 -> 0`,
/// so its limits are the kernel and cokernel of `1 - a^*` on `H^n(C_3)`.
/// The fusion side is `F_{C_3}(S_3)`.
pub fn example_c3_rtimes_z(n_max: usize, ctx: &Context) -> Result<ExampleReport> {
    let p = Prime::new(3)?;
    let c3 = builtin::cyclic(3)?;
    let whole = c3.whole();
    let b = whole.gens()[0];
    let a = GroupHom::from_generator_images(&c3, &whole, &whole, &[b], &[c3.inv(b)])?;
    let record = ctx.store.get(&c3, &whole, p, n_max)?;
    let aut = Arc::new(one_object_category("Aut_F(C3)", vec!["1".into(), "a".into()], 0, |x, y| x ^ y));
    let s3 = Arc::new(builtin::symmetric(3)?);
    let f = fusion_system(&s3, p)?;
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let dim_h = record.dim(n);
        let act = induced_map(&a, &record, &record, n)?;
        let one_minus = FpMatrix::identity(p, dim_h).add(&act.scale(p.neg(1)));
        let rank = one_minus.rank();
        let module = CatModule::new(aut.clone(), p, vec![dim_h], vec![FpMatrix::identity(p, dim_h), act.clone()])?;
        rows.push(ExampleRow {
            n,
            dim_h,
            action: act.row_vecs(),
            orbit: [dim_h - rank, dim_h - rank],
            fusion_orbit: higher_limits(&module, 4),
            stable: stable_elements(&f, n, ctx)?.dim(),
            expected: pattern(n),
        });
    }
    let orbit_matches = rows.iter().all(|r| r.orbit == [r.expected, r.expected]);
    let fusion_orbit_vanishes = rows.iter().all(|r| r.fusion_orbit[1..].iter().all(|&d| d == 0));
    let stable_matches = rows.iter().all(|r| r.stable == r.expected && r.fusion_orbit[0] == r.expected);
    let projection_fails = rows.iter().any(|r| r.orbit[1] != r.fusion_orbit[1]);
    Ok(ExampleReport { n_max, rows, orbit_matches, fusion_orbit_vanishes, stable_matches, projection_fails })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_the_period_four_pattern() {
        let r = example_c3_rtimes_z(8, &Context::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.rows[3].orbit, [1, 1]);
        assert_eq!(r.rows[1].orbit, [0, 0]);
        assert_eq!(r.rows[1].action, vec![vec![2]]);
    }
}

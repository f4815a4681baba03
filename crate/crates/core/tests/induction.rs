//! Restriction and induction along the functors between orbit and fusion
//! orbit categories: adjunction, Shapiro, exactness and the projection.

use std::sync::Arc;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fusion_orbit::category::{CatFunctor, FiniteCategory, GroupCategory, GroupCategoryKind, Layout};
use fusion_orbit::cohomology::{cohomology_over_orbit_upto, Context};
use fusion_orbit::fusion::{fusion_system, FusionSystem};
use fusion_orbit::group::{builtin, Elem, FiniteGroup, Subgroup};
use fusion_orbit::linalg::{EchelonSpace, FpMatrix, Prime};
use fusion_orbit::module::{
    ext, generated_submodule, higher_limits, hom_dim, induce, induce_along_projection, induced_dims_along_fusion_subgroup,
    induced_dims_along_subgroup, CatModule,
};

fn system(name: &str, p: u32) -> FusionSystem {
    let g: Arc<FiniteGroup> = Arc::new(builtin::by_name(name).unwrap());
    fusion_system(&g, Prime::new(p).unwrap()).unwrap()
}

fn all_classes(f: &FusionSystem) -> Vec<usize> {
    (0..f.classes().len()).collect()
}

fn cohomology_modules(cat: &GroupCategory, p: Prime, n_max: usize) -> Vec<CatModule> {
    cohomology_over_orbit_upto(cat, p, n_max, &Context::default()).unwrap().into_iter().map(|h| h.module).collect()
}

/// The category of `kind` for the subgroup `h` on the collection of `f`
/// restricted to `h`, with its functor into the category on all of `f`.
fn subgroup_functor(f: &FusionSystem, classes: &[usize], h: &Subgroup, kind: GroupCategoryKind) -> Option<(GroupCategory, GroupCategory, CatFunctor)> {
    let g = f.group();
    let restricted = f.ambient_collection(classes).unwrap().restrict_to(g, h);
    if restricted.is_empty() {
        return None;
    }
    let small = GroupCategory::build(g, &restricted, kind, Layout::Skeleton).unwrap();
    let big = f.category_on(classes, kind).unwrap();
    let functor = small.functor_to(&big).unwrap();
    Some((small, big, functor))
}

fn random_vector(rng: &mut StdRng, p: Prime, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..p.get()) as u8).collect()
}

fn random_module(rng: &mut StdRng, base: &Arc<FiniteCategory>, p: Prime, extra: &[CatModule]) -> CatModule {
    let mut m = CatModule::zero(base, p);
    for _ in 0..rng.gen_range(1..=3) {
        let piece = match rng.gen_range(0..3) {
            0 => CatModule::constant(base, p),
            1 => CatModule::representable(base, p, rng.gen_range(0..base.num_objects())),
            _ if !extra.is_empty() => extra[rng.gen_range(0..extra.len())].clone(),
            _ => CatModule::constant(base, p),
        };
        m = m.direct_sum(&piece);
    }
    m
}

/// `0 -> N -> M -> M/N -> 0` for the submodule `N` spanned per object by `spans`.
fn split_along(m: &CatModule, spans: &[EchelonSpace]) -> (CatModule, CatModule) {
    let c = m.base();
    let p = m.prime();
    let mut sub_action = Vec::new();
    let mut quot_action = Vec::new();
    for f in 0..c.num_morphisms() {
        let (x, y) = (c.source(f), c.target(f));
        let below = spans[x].to_matrix();
        let rows: Vec<Vec<u8>> = spans[y].basis().iter().map(|b| below.solve(&m.act(b, f)).expect("submodule is closed")).collect();
        sub_action.push(FpMatrix::from_residue_rows(p, spans[x].dim(), rows));
        let rows: Vec<Vec<u8>> =
            spans[y].complement_basis().iter().map(|b| spans[x].quotient_coords(&m.act(b, f))).collect();
        quot_action.push(FpMatrix::from_residue_rows(p, m.dim(x) - spans[x].dim(), rows));
    }
    let sub_dims = spans.iter().map(EchelonSpace::dim).collect();
    let quot_dims = spans.iter().zip(m.dims()).map(|(s, d)| d - s.dim()).collect();
    let sub = CatModule::new(c.clone(), p, sub_dims, sub_action).unwrap();
    let quot = CatModule::new(c.clone(), p, quot_dims, quot_action).unwrap();
    sub.check().unwrap();
    quot.check().unwrap();
    (sub, quot)
}

const CASES: [(&str, u32); 5] = [("S3", 3), ("S4", 2), ("A4", 2), ("D8", 2), ("S4", 3)];

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn induction_is_left_adjoint_to_restriction(seed in any::<u64>(), case in 0..CASES.len(), which in 0..3usize) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (g, p) = CASES[case];
        let f = system(g, p);
        let all = all_classes(&f);
        let subs = f.subgroups();
        let (small, big, functor) = match which {
            0 => subgroup_functor(&f, &all, &subs[rng.gen_range(0..subs.len())], GroupCategoryKind::Orbit).unwrap(),
            1 => subgroup_functor(&f, &all, &subs[rng.gen_range(0..subs.len())], GroupCategoryKind::FusionOrbit).unwrap(),
            _ => {
                let o = f.category_on(&all, GroupCategoryKind::Orbit).unwrap();
                let fo = f.category_on(&all, GroupCategoryKind::FusionOrbit).unwrap();
                let pr = o.functor_to(&fo).unwrap();
                (o, fo, pr)
            }
        };
        let m = random_module(&mut rng, small.category(), f.prime(), &cohomology_modules(&small, f.prime(), 2));
        let n = random_module(&mut rng, big.category(), f.prime(), &cohomology_modules(&big, f.prime(), 2));
        let ind = induce(&functor, &m).module;
        prop_assert!(ind.check().is_ok());
        prop_assert_eq!(hom_dim(&ind, &n), hom_dim(&m, &n.restrict(&functor)));
    }

    #[test]
    fn subgroup_induction_is_exact(seed in any::<u64>(), case in 0..CASES.len(), fusion in any::<bool>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (g, p) = CASES[case];
        let f = system(g, p);
        let kind = if fusion { GroupCategoryKind::FusionOrbit } else { GroupCategoryKind::Orbit };
        let subs = f.subgroups();
        let h = &subs[rng.gen_range(0..subs.len())];
        let (small, big, functor) = subgroup_functor(&f, &all_classes(&f), h, kind).unwrap();
        let m = random_module(&mut rng, small.category(), f.prime(), &cohomology_modules(&small, f.prime(), 2));
        let x = rng.gen_range(0..small.category().num_objects());
        let v = random_vector(&mut rng, f.prime(), m.dim(x));
        let (sub, quot) = split_along(&m, &generated_submodule(&m, &[(x, v)]));
        let whole = induce(&functor, &m).module;
        let (a, b) = (induce(&functor, &sub).module, induce(&functor, &quot).module);
        let sum: Vec<usize> = a.dims().iter().zip(b.dims()).map(|(s, q)| s + q).collect();
        prop_assert_eq!(whole.dims(), sum.as_slice());
        let closed = if fusion {
            induced_dims_along_fusion_subgroup(&small, &big, &m).unwrap()
        } else {
            induced_dims_along_subgroup(&small, &big, &m)
        };
        prop_assert_eq!(whole.dims(), closed.as_slice());
    }
}

// Ext^i over G of (Ind_H^G N, M) against Ext^i over H of (N, Res M) for
// H a Sylow subgroup or a centric subgroup, with N random.
#[test]
fn shapiro_for_sylow_and_centric_subgroups() {
    let mut rng = StdRng::seed_from_u64(7);
    for (g, p) in [("S3", 3), ("S4", 2)] {
        let f = system(g, p);
        let mut hs = vec![f.sylow().clone()];
        hs.extend(f.centric_classes().iter().map(|&c| f.class(c).representative.clone()));
        for classes in [all_classes(&f), f.centric_classes()] {
            for kind in [GroupCategoryKind::Orbit, GroupCategoryKind::FusionOrbit] {
                for h in &hs {
                    let Some((small, big, functor)) = subgroup_functor(&f, &classes, h, kind) else { continue };
                    let n = random_module(&mut rng, small.category(), f.prime(), &cohomology_modules(&small, f.prime(), 1));
                    let ind = induce(&functor, &n).module;
                    for m in cohomology_modules(&big, f.prime(), 2) {
                        assert_eq!(
                            ext(&ind, &m, 2).unwrap(),
                            ext(&n, &m.restrict(&functor), 2).unwrap(),
                            "{g} {kind:?} H = {}",
                            h.describe(f.group())
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn induced_permutation_module_counts_fixed_cosets() {
    // Ind along i_{C3}^{S3} of the constant module is F_3[S3/C3^?]; at C3 both cosets are fixed.
    let f = system("S3", 3);
    let c3 = f.sylow().clone();
    let (small, big, functor) = subgroup_functor(&f, &all_classes(&f), &c3, GroupCategoryKind::Orbit).unwrap();
    let ind = induce(&functor, &CatModule::constant(small.category(), f.prime())).module;
    let (x, _) = big.locate(&c3).unwrap();
    assert_eq!(ind.dim(x), 2);
    let (t, _) = big.locate(&f.group().trivial()).unwrap();
    assert_eq!(ind.dim(t), 2);
}

fn orbit_count_of_fixed_cosets(g: &FiniteGroup, ambient: &Subgroup, h: &Subgroup, k: &Subgroup) -> usize {
    // cosets uH with K uH = uH, up to the action of C_G(K)
    let mut cosets: Vec<Vec<Elem>> = Vec::new();
    for &u in ambient.elements() {
        let mut c: Vec<Elem> = h.elements().iter().map(|&x| g.mul(u, x)).collect();
        c.sort_unstable();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let fixed: Vec<usize> = (0..cosets.len())
        .filter(|&i| {
            let u = cosets[i][0];
            k.elements().iter().all(|&y| cosets[i].contains(&g.mul(y, u)))
        })
        .collect();
    let cent = g.centralizer(k).intersect(g, ambient);
    let mut seen = vec![false; cosets.len()];
    let mut orbits = 0;
    for &i in &fixed {
        if seen[i] {
            continue;
        }
        orbits += 1;
        for &z in cent.elements() {
            let image = g.mul(z, cosets[i][0]);
            let j = cosets.iter().position(|c| c.contains(&image)).unwrap();
            seen[j] = true;
        }
    }
    orbits
}

// Ind_pr F_p[G/H^?] has the dimensions of F_p[C_G(?) \ (G/H)^?], the
// coinvariant formula and the generic construction agree, and
// Ind_pr Res_pr is the identity.
#[test]
fn projection_induction_of_permutation_modules() {
    for (g, p) in [("S3", 3), ("S4", 2)] {
        let f = system(g, p);
        let all = all_classes(&f);
        let orbit = f.category_on(&all, GroupCategoryKind::Orbit).unwrap();
        let fusion = f.category_on(&all, GroupCategoryKind::FusionOrbit).unwrap();
        let pr = orbit.functor_to(&fusion).unwrap();
        let probes = cohomology_modules(&fusion, f.prime(), 2);
        for x in 0..orbit.category().num_objects() {
            let perm = CatModule::representable(orbit.category(), f.prime(), x);
            let generic = induce(&pr, &perm).module;
            let fast = induce_along_projection(&orbit, &fusion, &perm).unwrap();
            let expected: Vec<usize> = fusion
                .objects()
                .iter()
                .map(|k| orbit_count_of_fixed_cosets(f.group(), f.ambient(), orbit.object(x), k))
                .collect();
            assert_eq!(generic.dims(), expected.as_slice(), "{g} H = {}", orbit.object(x).describe(f.group()));
            assert_eq!(fast.dims(), expected.as_slice());
            for n in &probes {
                assert_eq!(hom_dim(&generic, n), hom_dim(&fast, n));
                assert_eq!(hom_dim(n, &generic), hom_dim(n, &fast));
                assert_eq!(hom_dim(&fast, n), hom_dim(&perm, &n.restrict(&pr)));
            }
            let (a, b) = (hom_dim(&generic, &fast), hom_dim(&fast, &generic));
            assert_eq!(a, b);
        }
        for m in &probes {
            assert_eq!(&induce_along_projection(&orbit, &fusion, &m.restrict(&pr)).unwrap(), m);
            assert_eq!(induce(&pr, &m.restrict(&pr)).module.dims(), m.dims());
        }
    }
}

#[test]
fn higher_limits_agree_across_layouts() {
    for (g, p) in [("S3", 3), ("S4", 2), ("D8", 2)] {
        let f = system(g, p);
        let coll = f.ambient_collection(&all_classes(&f)).unwrap();
        for kind in [GroupCategoryKind::Orbit, GroupCategoryKind::FusionOrbit, GroupCategoryKind::Fusion] {
            let skel = GroupCategory::build(f.group(), &coll, kind, Layout::Skeleton).unwrap();
            let full = GroupCategory::build(f.group(), &coll, kind, Layout::Full).unwrap();
            let embed = skel.functor_to(&full).unwrap();
            assert!(embed.is_equivalence());
            for m in cohomology_modules(&full, f.prime(), 2) {
                assert_eq!(higher_limits(&m, 2), higher_limits(&m.restrict(&embed), 2), "{g} {kind:?}");
            }
        }
    }
}

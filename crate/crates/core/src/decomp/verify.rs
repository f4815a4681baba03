use std::collections::BTreeMap;

use serde::Serialize;

use super::limits::subgroup_limits;
use super::rows::normalizer_row;
use crate::category::GroupCategoryKind;
use crate::cohomology::{cohomology_over_orbit, Context};
use crate::error::Result;
use crate::fusion::{ClassCollection, FusionSystem, Preset};
use crate::module::{higher_limits, map_on_cohomology};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypotheses do not hold; the comparison was still run.
    OutOfHypothesis,
}

/// Outcome of one theorem check on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub instance: String,
    /// Dimension lists keyed by a short label, e.g. `"n=2/orbit"`.
    pub dims: BTreeMap<String, Vec<usize>>,
    pub verdict: Verdict,
    pub bounds: BTreeMap<String, usize>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    fn new(theorem: &str, instance: String, bounds: &[(&str, usize)]) -> Self {
        VerifyReport {
            theorem: theorem.to_string(),
            instance,
            dims: BTreeMap::new(),
            verdict: Verdict::Pass,
            bounds: bounds.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            notes: Vec::new(),
        }
    }

    fn fail(&mut self, note: String) {
        self.verdict = Verdict::Fail;
        self.notes.push(note);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn instance(f: &FusionSystem, collection: &str) -> String {
    format!("{} p={} {}", f.group().name(), f.prime().get(), collection)
}

/// Compares `lim^i H^n` over `O^c(F)` with the normalizer row over
/// `s̄d(F^c)` for `n <= n_max`, `i <= i_max`.
pub fn verify_norm_sharp(f: &FusionSystem, n_max: usize, i_max: usize, ctx: &Context) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("normalizer-sharpness", instance(f, "centric"), &[("n_max", n_max), ("i_max", i_max)]);
    let centric = f.collection(&Preset::Centric)?;
    for n in 0..=n_max {
        let a = subgroup_limits(f, &centric, n, i_max, ctx)?.dims;
        let b = normalizer_row(f, n, i_max, ctx)?.dims;
        if a != b {
            r.fail(format!("n={n}: subgroup {a:?} vs normalizer {b:?}"));
        }
        r.dims.insert(format!("n={n}/subgroup"), a);
        r.dims.insert(format!("n={n}/normalizer"), b);
    }
    Ok(r)
}

/// For a collection closed under p-overgroups: `H^i(F̄_C(G); H^n)` and
/// `H^i(O_C(G); Res_pr H^n)` have equal dimensions and the map induced by
/// the projection `pr: O_C(G) -> F̄_C(G)` is an isomorphism, `i <= d`.
pub fn verify_thesame(f: &FusionSystem, collection: &ClassCollection, n_max: usize, d: usize, ctx: &Context) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("projection-iso", instance(f, &collection.name), &[("n_max", n_max), ("d", d)]);
    if !collection.overgroup_closed {
        r.verdict = Verdict::OutOfHypothesis;
        r.notes.push("collection is not closed under p-overgroups".into());
    }
    let orbit = f.category_on(&collection.classes, GroupCategoryKind::Orbit)?;
    let fusion = f.category_on(&collection.classes, GroupCategoryKind::FusionOrbit)?;
    let pr = orbit.functor_to(&fusion)?;
    for n in 0..=n_max {
        let m = cohomology_over_orbit(&fusion, f.prime(), n, ctx)?.module;
        let res = m.restrict(&pr);
        let down = higher_limits(&m, d);
        let up = higher_limits(&res, d);
        let maps = map_on_cohomology(&pr, &m, d)?;
        let isos = maps.iter().all(|a| a.rows() == a.cols() && a.rank() == a.rows());
        if down != up || !isos {
            let note = format!("n={n}: fusion orbit {down:?}, orbit {up:?}, induced maps invertible: {isos}");
            if r.verdict == Verdict::OutOfHypothesis {
                r.notes.push(note);
            } else {
                r.fail(note);
            }
        }
        r.dims.insert(format!("n={n}/fusion-orbit"), down);
        r.dims.insert(format!("n={n}/orbit"), up);
    }
    Ok(r)
}

/// `lim^i H^n` over `O(F_C)` and `O(F_C')` agree for `n <= n_max`,
/// `i <= d`. The hypotheses are: `C` closed under overgroups and every
/// centric-radical class in `C ⊆ C'`, with `C'` the centric classes.
pub fn verify_reduction(
    f: &FusionSystem,
    c: &ClassCollection,
    c_prime: &ClassCollection,
    n_max: usize,
    d: usize,
    ctx: &Context,
) -> Result<VerifyReport> {
    let name = format!("{} vs {}", c.name, c_prime.name);
    let mut r = VerifyReport::new("collection-reduction", instance(f, &name), &[("n_max", n_max), ("d", d)]);
    let centric = f.centric_classes();
    let cr = f.centric_radical_classes();
    let mut broken = Vec::new();
    if !c.overgroup_closed {
        broken.push("C is not closed under overgroups");
    }
    if !cr.iter().all(|x| c.classes.contains(x)) {
        broken.push("C misses a centric-radical class");
    }
    if !c.classes.iter().all(|x| c_prime.classes.contains(x)) {
        broken.push("C is not contained in C'");
    }
    if c_prime.classes != centric && c_prime.classes != c.classes {
        broken.push("C' is not the centric collection");
    }
    let out_of_hypothesis = !broken.is_empty();
    r.notes.extend(broken.iter().map(|s| s.to_string()));
    let mut equal = true;
    for n in 0..=n_max {
        let a = subgroup_limits(f, c, n, d, ctx)?.dims;
        let b = subgroup_limits(f, c_prime, n, d, ctx)?.dims;
        if a != b {
            equal = false;
            r.notes.push(format!("n={n}: {a:?} vs {b:?}"));
        }
        r.dims.insert(format!("n={n}/C"), a);
        r.dims.insert(format!("n={n}/C'"), b);
    }
    r.verdict = match (out_of_hypothesis, equal) {
        (true, _) => Verdict::OutOfHypothesis,
        (false, true) => Verdict::Pass,
        (false, false) => Verdict::Fail,
    };
    Ok(r)
}

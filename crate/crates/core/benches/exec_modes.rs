use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fusion_orbit::cohomology::Context;
use fusion_orbit::decomp::{normalizer_row, subgroup_limits, verify_thesame};
use fusion_orbit::exec::ExecMode;
use fusion_orbit::fusion::{fusion_system, FusionSystem, Preset};
use fusion_orbit::group::builtin;
use fusion_orbit::linalg::Prime;

fn system(name: &str, p: u32) -> FusionSystem {
    let g = Arc::new(builtin::by_name(name).unwrap());
    fusion_system(&g, Prime::new(p).unwrap()).unwrap()
}

const MODES: [ExecMode; 2] = [ExecMode::Sequential, ExecMode::Parallel];

// Every iteration starts from an empty cohomology store, so the timings
// include the resolutions.
fn exec_modes(c: &mut Criterion) {
    let s4 = system("S4", 2);
    let a5 = system("A5", 2);
    let centric = s4.collection(&Preset::Centric).unwrap();

    let mut group = c.benchmark_group("classify");
    for mode in MODES {
        group.bench_with_input(BenchmarkId::new("A5 p=2", format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| a5.classify(mode))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("subgroup_limits");
    for mode in MODES {
        group.bench_with_input(BenchmarkId::new("S4 p=2 centric n=4", format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| subgroup_limits(&s4, &centric, 4, 2, &Context::in_memory(mode)).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("normalizer_row");
    for mode in MODES {
        group.bench_with_input(BenchmarkId::new("S4 p=2 n=3", format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| normalizer_row(&s4, 3, 2, &Context::in_memory(mode)).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("verify_thesame");
    group.sample_size(10);
    for mode in MODES {
        group.bench_with_input(BenchmarkId::new("S4 p=2 centric n<=3", format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| verify_thesame(&s4, &centric, 3, 2, &Context::in_memory(mode)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, exec_modes);
criterion_main!(benches);

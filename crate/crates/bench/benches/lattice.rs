use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use freearr::arrangement::{build_lattice, char_poly};
use freearr::rootsys::{build_cone, build_root_system, ConeKind};
use freearr::{Arrangement, LatticeData, RootType};

fn families() -> Vec<(&'static str, Arrangement)> {
    let cone = |kind, n, c| build_cone(&build_root_system(kind, n).unwrap(), c).unwrap().arrangement;
    vec![
        ("weyl-A3", cone(RootType::A, 3, ConeKind::Weyl)),
        ("weyl-B3", cone(RootType::B, 3, ConeKind::Weyl)),
        ("cat1-A2", cone(RootType::A, 2, ConeKind::Catalan { k: 1 })),
        ("cat1-B2", cone(RootType::B, 2, ConeKind::Catalan { k: 1 })),
        ("shi1-A3", cone(RootType::A, 3, ConeKind::Shi { k: 1 })),
    ]
}

fn bench_lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice");
    for (name, a) in families() {
        group.bench_with_input(BenchmarkId::new("build", name), &a, |b, a| b.iter(|| build_lattice(a)));
        let lat = build_lattice(&a);
        group.bench_with_input(BenchmarkId::new("chi", name), &lat, |b, lat| b.iter(|| char_poly(lat)));
        group.bench_with_input(BenchmarkId::new("replay-data", name), &a, |b, a| {
            b.iter(|| LatticeData::from_arrangement(a))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_lattice);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use freearr::rootsys::{build_cone, build_root_system, catalan_certificate, ConeKind, SeedPolicy};
use freearr::theorems::replay_certificate_trusting;
use freearr::{freeness_oracle, LatticeData, Multiplicity, RootType};

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (name, kind, n, cone) in [
        ("weyl-A3", RootType::A, 3, ConeKind::Weyl),
        ("cat1-A1", RootType::A, 1, ConeKind::Catalan { k: 1 }),
        ("shi1-A2", RootType::A, 2, ConeKind::Shi { k: 1 }),
        ("cat1-A2", RootType::A, 2, ConeKind::Catalan { k: 1 }),
    ] {
        let a = build_cone(&build_root_system(kind, n).unwrap(), cone)
            .unwrap()
            .arrangement;
        let m = Multiplicity::simple(a.len());
        group.bench_with_input(BenchmarkId::from_parameter(name), &a, |b, a| {
            b.iter(|| freeness_oracle(a, &m, None))
        });
    }
    group.finish();
}

fn bench_catalan(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalan");
    group.sample_size(10);
    for (name, kind, n, seed) in [
        ("A2", RootType::A, 2, vec![1, 3, 3]),
        ("B2", RootType::B, 2, vec![1, 4, 4]),
        ("A3", RootType::A, 3, vec![1, 4, 4, 4]),
    ] {
        let rs = build_root_system(kind, n).unwrap();
        group.bench_function(BenchmarkId::new("certify", name), |b| {
            b.iter(|| catalan_certificate(&rs, 1, SeedPolicy::Supplied(seed.clone())).unwrap())
        });
        let c = catalan_certificate(&rs, 1, SeedPolicy::Supplied(seed.clone())).unwrap();
        let cert = c.certificate;
        let data = LatticeData::from_arrangement(&c.arrangement);
        group.bench_function(BenchmarkId::new("replay", name), |b| {
            b.iter(|| replay_certificate_trusting(&data, &cert).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_oracle, bench_catalan);
criterion_main!(benches);

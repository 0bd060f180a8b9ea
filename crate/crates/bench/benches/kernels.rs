use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;

use k3bm_core::arith::{padic_sqrt, Fp};
use k3bm_core::data::DataDir;
use k3bm_core::fourfold::{build_surface_ideal_z, verify_insoluble_mod9, CubicFourfold};
use k3bm_core::groebner::GroebnerLimits;
use k3bm_core::interp::{reconstruct, specialize, ReconstructionProblem};
use k3bm_core::k3::{count_points_double_cover, tritangent_search};
use k3bm_core::poly::{MonomialOrder, PolyRing};

fn data() -> DataDir {
    DataDir::open_default().expect("shipped data")
}

fn saturation(c: &mut Criterion) {
    let d = data();
    let q: Vec<_> = ["q1.poly", "q2.poly", "q3.poly"].iter().map(|f| d.poly_z(f).unwrap()).collect();
    let limits = GroebnerLimits::default();
    c.bench_function("surface ideal by saturation", |b| {
        b.iter(|| build_surface_ideal_z(&q, [&[3, 4, 5], &[0, 1, 2]], &limits).unwrap())
    });
}

fn mod9_scan(c: &mut Criterion) {
    let x = CubicFourfold::new(data().poly_z("c.poly").unwrap()).unwrap();
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    g.bench_function("cubic mod 9", |b| b.iter(|| verify_insoluble_mod9(&x).unwrap()));
    g.finish();
}

fn counting(c: &mut Criterion) {
    let f = data().poly_z("f.poly").unwrap();
    let k = Fp::new(13);
    c.bench_function("double cover points over F_13", |b| {
        b.iter(|| count_points_double_cover(&f, &k, 1 << 20).unwrap())
    });
    let r = PolyRing::new(k, f.ring().vars(), MonomialOrder::GrevLex);
    let f13 = f.reduce_mod(&r);
    c.bench_function("tritangent search over F_13", |b| b.iter(|| tritangent_search(&f13).unwrap()));
}

fn interpolation(c: &mut Criterion) {
    let f = data().poly_z("f.poly").unwrap();
    let big = f.mul(&f);
    let samples: Vec<_> = (0..13i64)
        .map(|k| specialize(&big, &BigInt::from(1), &BigInt::from(k), true).unwrap())
        .collect();
    let problem = ReconstructionProblem { degree: 12, samples };
    let mut g = c.benchmark_group("interp");
    g.sample_size(10);
    g.bench_function("degree-12 reconstruction", |b| b.iter(|| reconstruct(&problem).unwrap()));
    g.finish();
}

fn hensel(c: &mut Criterion) {
    let p: BigInt = data().integers("bad_primes.txt").unwrap().pop().unwrap();
    let a = BigInt::from(4166713u64) * BigInt::from(4166713u64);
    c.bench_function("p-adic square root, 145-digit prime", |b| b.iter(|| padic_sqrt(&a, &p, 20).unwrap()));
}

criterion_group!(benches, saturation, mod9_scan, counting, interpolation, hensel);
criterion_main!(benches);

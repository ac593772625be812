use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use exactexpo::algebra::{determinant, zeta, Matrix, Zp, I128};
use exactexpo::covering::set_cover_2n;
use exactexpo::hamiltonicity::{count_ham_cycles_mod_p, ModPConfig};
use exactexpo::instances::generate::{planted_subset_sum, random_graph, random_kcnf, random_set_system};
use exactexpo::satkit::monien_speckenmeyer;
use exactexpo::subsetsum::meet_in_middle;
use exactexpo::{Counters, Seed};

fn bench_zeta(c: &mut Criterion) {
    let mut group = c.benchmark_group("zeta");
    for n in [12, 16, 20] {
        let v: Vec<i128> = (0..1i128 << n).map(|i| i % 7).collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &v, |b, v| {
            b.iter(|| zeta(&I128, black_box(v), &mut Counters::new()).unwrap())
        });
    }
    group.finish();
}

fn bench_set_cover(c: &mut Criterion) {
    let mut group = c.benchmark_group("set_cover_2n");
    for n in [10, 14, 16] {
        let s = random_set_system(n, n, n / 2, Seed(1)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| b.iter(|| set_cover_2n(black_box(s), 3).unwrap()));
    }
    group.finish();
}

fn bench_mitm(c: &mut Criterion) {
    let mut group = c.benchmark_group("meet_in_middle");
    for n in [16, 24, 32] {
        let (inst, _) = planted_subset_sum(n, Seed(2)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| meet_in_middle(black_box(inst)).unwrap())
        });
    }
    group.finish();
}

fn bench_determinant(c: &mut Criterion) {
    let zp = Zp::new(1_000_003).unwrap();
    let mut group = c.benchmark_group("determinant_mod_p");
    for n in [8, 16, 32] {
        let m = Matrix::from_fn(n, n, |i, j| ((i * 31 + j * 17 + i * j) % 1_000_003) as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| determinant(&zp, black_box(m)).unwrap()));
    }
    group.finish();
}

fn bench_ham_mod_p(c: &mut Criterion) {
    let mut group = c.benchmark_group("ham_count_mod_p");
    for n in [8, 10, 12] {
        let g = random_graph(n, 0.5, true, Seed(3));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| count_ham_cycles_mod_p(black_box(g), 3, Seed(4), &ModPConfig::default()).unwrap())
        });
    }
    group.finish();
}

fn bench_ms(c: &mut Criterion) {
    let mut group = c.benchmark_group("monien_speckenmeyer");
    for n in [20, 26, 32] {
        let phi = random_kcnf(n, (4.26 * n as f64) as usize, 3, Seed(5)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &phi, |b, phi| {
            b.iter(|| monien_speckenmeyer(black_box(phi)))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_zeta,
    bench_set_cover,
    bench_mitm,
    bench_determinant,
    bench_ham_mod_p,
    bench_ms
);
criterion_main!(benches);

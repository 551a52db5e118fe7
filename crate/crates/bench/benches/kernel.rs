use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tilting_core::homology::{hom_space, ext1, projective_modules, simple_modules};
use tilting_core::module::direct_sum;
use tilting_core::{Algebra, Field, Mat, QuiverPresentation};

fn elimination(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for field in [Field::Rational, Field::Prime(3), Field::Prime(10007)] {
        for n in [8usize, 16, 32] {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            let a = Mat::random(field, n, n, &mut rng, 9);
            g.bench_with_input(BenchmarkId::new(field.to_string(), n), &a, |b, a| b.iter(|| a.rank()));
        }
    }
    g.finish();
}

fn hom_and_ext(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology");
    for n in [2usize, 3, 4] {
        let alg = Arc::new(Algebra::path_algebra(Field::Rational, &QuiverPresentation::linear(n)).unwrap());
        let ps = projective_modules(&alg).unwrap();
        let ss = simple_modules(&alg).unwrap();
        let p = direct_sum(&alg, &ps.iter().collect::<Vec<_>>()).unwrap().module;
        let s = direct_sum(&alg, &ss.iter().collect::<Vec<_>>()).unwrap().module;
        g.bench_function(BenchmarkId::new("hom A-A", n), |b| b.iter(|| hom_space(&p, &p).unwrap().dim()));
        g.bench_function(BenchmarkId::new("ext1 S-S", n), |b| b.iter(|| ext1(&s, &s).unwrap().dim()));
    }
    g.finish();
}

criterion_group!(benches, elimination, hom_and_ext);
criterion_main!(benches);

use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, Criterion};
use tilting_core::input::{parse, Document};
use tilting_core::pipeline::{check_tilting, select_probes, verify_bb, verify_derived, Options};

fn load(name: &str) -> Document {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs").join(name);
    parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn pipelines(c: &mut Criterion) {
    let doc = load("a2-apr.txt");
    let probes = select_probes(&doc, None).unwrap();
    let quick = Options { ses_samples: 20, ore_samples: 10, samples: 5, ff_pairs: 2, ..Options::default() };
    let mut g = c.benchmark_group("a2-apr");
    g.sample_size(10);
    g.bench_function("check-tilting", |b| b.iter(|| check_tilting(&doc, &quick).unwrap().checks.len()));
    g.bench_function("verify-bb", |b| b.iter(|| verify_bb(&doc, &probes, &quick).unwrap().checks.len()));
    g.bench_function("verify-derived", |b| b.iter(|| verify_derived(&doc, &quick).unwrap().checks.len()));
    g.finish();
}

criterion_group!(benches, pipelines);
criterion_main!(benches);

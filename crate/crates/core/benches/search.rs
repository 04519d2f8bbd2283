//! Parallel vs. sequential timings of the search kernels.
//!
//! `cargo bench` compares the rayon pool against a single-worker pool;
//! `cargo bench --no-default-features` times the plain sequential fallback.

use std::time::Duration;

use codoku::enumerator::enumerate_canonical;
use codoku::minimal::{class_representatives, minimal_census};
use codoku::par;
use codoku::presets::Setting;
use codoku::puzzle::Puzzle;
use codoku::rater::rate_all;
use codoku::symmetry::classify;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn modes() -> Vec<(&'static str, Option<usize>)> {
    if par::is_parallel() {
        vec![("parallel", None), ("one_worker", Some(1))]
    } else {
        vec![("sequential", None)]
    }
}

fn bench_search(c: &mut Criterion) {
    let palette = Setting::Z5.palette();
    let census = enumerate_canonical(&palette);
    let group = Setting::Z5.full_group();
    let report = classify(&census, &palette, &group).unwrap();
    let reps = class_representatives(&census, &report);
    let (_, masks) = minimal_census(&reps, &palette, 4).unwrap();
    let puzzles: Vec<Puzzle> = reps
        .iter()
        .zip(&masks)
        .flat_map(|(r, ms)| ms.iter().map(|&m| Puzzle::from_mask(palette.clone(), &r.grid, m).unwrap()))
        .collect();

    let mut g = c.benchmark_group("search");
    for (mode, workers) in modes() {
        g.bench_with_input(BenchmarkId::new("enumerate_z5", mode), &workers, |b, &w| {
            b.iter(|| par::with_workers(w, || enumerate_canonical(&palette)))
        });
        g.bench_with_input(BenchmarkId::new("classify_z5", mode), &workers, |b, &w| {
            b.iter(|| par::with_workers(w, || classify(&census, &palette, &group).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new("minimal_k4", mode), &workers, |b, &w| {
            b.iter(|| par::with_workers(w, || minimal_census(&reps, &palette, 4).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new("rate_k4", mode), &workers, |b, &w| {
            b.iter(|| par::with_workers(w, || rate_all(&puzzles, 10, 1)))
        });
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default()
        .sample_size(10)
        .measurement_time(Duration::from_secs(5));
    targets = bench_search
}
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use shirac_bench::{dense_matrices, periodic_mix};
use shirac_core::{
    build_interference, max_duration, transform_graph, Extremum, MaskKind, Rational, Window,
};

fn bench_flatten(c: &mut Criterion) {
    let x = build_interference(&dense_matrices(3, 3, 12)).expect("valid grids");
    c.bench_function("flatten dense 3x3 degree-12 pipeline", |b| {
        b.iter(|| black_box(&x).flatten(None).expect("finite"))
    });
}

fn bench_windowed_flatten(c: &mut Criterion) {
    let x = periodic_mix();
    let window = Window::new(Rational::integer(0), Rational::integer(300)).expect("ordered");
    c.bench_function("flatten periodic mix over [0, 300]", |b| {
        b.iter(|| black_box(&x).flatten(Some(&window)).expect("windowed"))
    });
}

fn bench_max_duration(c: &mut Criterion) {
    let x = periodic_mix();
    let window = Window::new(Rational::integer(0), Rational::integer(120)).expect("ordered");
    let d = Rational::new(15, 2);
    c.bench_function("max duration over [0, 120]", |b| {
        b.iter(|| {
            max_duration(black_box(&x), &d, &window, MaskKind::ClosedClosed).expect("supported")
        })
    });
}

fn bench_graph(c: &mut Criterion) {
    let x = build_interference(&dense_matrices(2, 2, 4)).expect("valid grids");
    let window = Window::new(Rational::integer(0), Rational::integer(40)).expect("ordered");
    c.bench_function("interval transform graph over [0, 40]", |b| {
        b.iter(|| {
            transform_graph(black_box(&x), &window, Extremum::Max, MaskKind::ClosedClosed)
                .expect("supported")
        })
    });
}

criterion_group!(
    benches,
    bench_flatten,
    bench_windowed_flatten,
    bench_max_duration,
    bench_graph
);
criterion_main!(benches);

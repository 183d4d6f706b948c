use criterion::{criterion_group, criterion_main, Criterion};
use spencer_bench::{flagship, incomplete, quadrics, space_curve};
use spencer_core::completion::{codimension, complete, DEFAULT_MAX_STEPS};
use spencer_core::inverse::inverse_system;
use spencer_core::purity::{localize, localized_dimension};
use spencer_core::ratlinalg::{rat, Matrix};
use spencer_core::spencer::{DeltaComplex, InvolutionOptions};
use std::hint::black_box;

fn slices(c: &mut Criterion) {
    let s = flagship();
    c.bench_function("flagship dim R_0..R_6", |b| b.iter(|| black_box(&s).dimensions(6)));
}

fn delta(c: &mut Criterion) {
    let s = flagship();
    c.bench_function("flagship delta sequence at order 5", |b| {
        b.iter(|| DeltaComplex::new(black_box(&s)).sequence(5).expect("sequence"))
    });
}

fn completion(c: &mut Criterion) {
    let s = incomplete();
    let opts = InvolutionOptions::default();
    c.bench_function("complete two-step system", |b| b.iter(|| complete(black_box(&s), DEFAULT_MAX_STEPS, &opts)));
    let f = flagship();
    c.bench_function("flagship codimension", |b| b.iter(|| codimension(black_box(&f), &opts)));
}

fn inverse(c: &mut Criterion) {
    let s = quadrics();
    c.bench_function("inverse system of dimension 12", |b| {
        b.iter(|| inverse_system(black_box(&s), 8).expect("finite").top_generators())
    });
}

fn localization(c: &mut Criterion) {
    let s = space_curve();
    c.bench_function("space curve localized dimension", |b| {
        b.iter(|| {
            let loc = localize(black_box(&s), 2).expect("localize");
            localized_dimension(&loc, 10).expect("finite")
        })
    });
}

fn elimination(c: &mut Criterion) {
    let m: Matrix<_> = Matrix::from_rows(
        (0..24).map(|i| (0..24).map(|j| rat(((i * 7 + j * 13) % 11) as i64 - 5, 1 + (i + j) as i64 % 3)).collect()).collect(),
    );
    c.bench_function("rank of a 24x24 rational matrix", |b| b.iter(|| black_box(&m).rank()));
}

criterion_group!(benches, slices, delta, completion, inverse, localization, elimination);
criterion_main!(benches);

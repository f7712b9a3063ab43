use criterion::{black_box, criterion_group, criterion_main, Criterion};
use plovkit_core::abelian::{jordan_model, monomial_intersections, plov, UnipotentModel};
use plovkit_core::incidence::build_matrix;
use plovkit_core::lefschetz::{verify_full_rank, verify_hard_lefschetz};

fn incidence(c: &mut Criterion) {
    c.bench_function("build_matrix 4,6,12", |b| b.iter(|| build_matrix(black_box(4), 6, 12).unwrap()));
    c.bench_function("rank table 4,6", |b| b.iter(|| verify_full_rank(black_box(4), 6).unwrap()));
    c.bench_function("window product 4,6,0", |b| b.iter(|| verify_hard_lefschetz(black_box(4), 6, 0).unwrap()));
}

fn dynamics(c: &mut Criterion) {
    let u = UnipotentModel::new(jordan_model(1, 4, 1).unwrap()).unwrap();
    c.bench_function("plov 1,4,1", |b| b.iter(|| plov(black_box(&u)).unwrap()));
    let u = UnipotentModel::new(jordan_model(0, 4, 1).unwrap()).unwrap();
    c.bench_function("monomial scan 0,4,1", |b| b.iter(|| monomial_intersections(black_box(&u)).unwrap()));
}

criterion_group!(benches, incidence, dynamics);
criterion_main!(benches);

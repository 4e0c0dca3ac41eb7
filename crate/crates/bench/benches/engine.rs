use criterion::{black_box, criterion_group, criterion_main, Criterion};
use taut_core::expr::eval_str;
use taut_core::polyoracle;
use taut_core::schubert;
use taut_core::staircase;
use taut_core::Engine;

fn staircase_beta(c: &mut Criterion) {
    c.bench_function("beta(6)", |b| b.iter(|| staircase::beta(black_box(6)).unwrap()));
}

fn vandermonde(c: &mut Criterion) {
    c.bench_function("check_chain(5, 2)", |b| b.iter(|| polyoracle::check_chain(black_box(5), 2).unwrap()));
}

fn tower_integrals(c: &mut Criterion) {
    let e = Engine::default();
    c.bench_function("integrate Delta<3>^4", |b| {
        b.iter(|| e.integrate(&eval_str(black_box("Delta<3>^4"), &e, 3).unwrap()).unwrap())
    });
    c.bench_function("nsec3", |b| b.iter(|| schubert::nsec3(&e).unwrap()));
}

criterion_group!(benches, staircase_beta, vandermonde, tower_integrals);
criterion_main!(benches);

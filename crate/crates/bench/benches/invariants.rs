use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use trace_invariants::eval::{independence_certificate, psi_n, CertificateOptions};
use trace_invariants::io::parse_sigma;
use trace_invariants::{Field, GenericKind, GroupSpec, PolyMatrix};

fn sigma_t(c: &mut Criterion) {
    let mut group = c.benchmark_group("sigma_t");
    for n in [3, 4, 5] {
        let a = PolyMatrix::generic(Field::Prime(5), GenericKind::X, 1, None, n).unwrap();
        group.bench_function(format!("generic n={n} t=2"), |b| {
            b.iter(|| black_box(&a).sigma_t(2).unwrap())
        });
    }
    group.finish();
}

fn psi(c: &mut Criterion) {
    let field = Field::Prime(7);
    let f = parse_sigma(
        "sigma(2, x1*x2) - tr(x1)*tr(x2*x1*x1) + 3*tr(x1*T(x2))",
        field,
    )
    .unwrap();
    let mut group = c.benchmark_group("psi_n");
    for (name, g) in [
        ("O(3)", GroupSpec::o(3)),
        ("Sp(2)", GroupSpec::sp(2).unwrap()),
    ] {
        group.bench_function(name, |b| b.iter(|| psi_n(black_box(&f), g).unwrap()));
    }
    group.finish();
}

fn derive(c: &mut Criterion) {
    let f = parse_sigma(
        "sigma(2, x1*x2*x1) * tr(x1*x1*T(x2)) + tr(x1)*tr(x1)*tr(x1)",
        Field::Prime(3),
    )
    .unwrap();
    c.bench_function("derive q=1", |b| {
        b.iter(|| black_box(&f).derive(1).unwrap())
    });
}

fn certificate(c: &mut Criterion) {
    let mut group = c.benchmark_group("certificate");
    group.sample_size(10);
    group.bench_function("GL(3) d=2 deg 3 over F_5", |b| {
        b.iter(|| {
            independence_certificate(
                Field::Prime(5),
                2,
                3,
                GroupSpec::gl(3),
                CertificateOptions::default(),
            )
            .unwrap()
        })
    });
    group.bench_function("O(2) d=2 deg 2 over Q", |b| {
        b.iter(|| {
            independence_certificate(
                Field::Rationals,
                2,
                2,
                GroupSpec::o(2),
                CertificateOptions::default(),
            )
            .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, sigma_t, psi, derive, certificate);
criterion_main!(benches);

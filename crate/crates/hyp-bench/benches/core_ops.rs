use criterion::{black_box, criterion_group, criterion_main, Criterion};

use hyp_bench::{bench_ellipse, exp_field, sample_points};
use hyperbolic::clifford::{Multivector, Signature};
use hyperbolic::contour;
use hyperbolic::number::HNumber;
use hyperbolic::roots;
use hyperbolic::specfun::{self, SeriesConfig};

fn ring_ops(c: &mut Criterion) {
    let points = sample_points(256);
    c.bench_function("mul_256", |b| {
        b.iter(|| {
            let mut acc = HNumber::ONE;
            for &z in &points {
                acc = black_box(acc * z);
            }
            acc
        })
    });
    let cfg = SeriesConfig::default();
    c.bench_function("exp_series", |b| {
        b.iter(|| specfun::exp(black_box(HNumber::new(0.4, -1.2)), &cfg))
    });
}

fn contour_ops(c: &mut Criterion) {
    let field = exp_field();
    let ellipse = bench_ellipse();
    c.bench_function("integrate_exp_ellipse", |b| {
        b.iter(|| contour::integrate(&field, &ellipse, 1e-10))
    });
}

fn root_ops(c: &mut Criterion) {
    c.bench_function("sqrt_all", |b| {
        b.iter(|| roots::sqrt_all(black_box(HNumber::new(2.0, 1.0))))
    });
}

fn clifford_ops(c: &mut Criterion) {
    let sig = Signature::new(2, 1).expect("small signature");
    let mut a = Multivector::zero(sig.clone());
    let mut m = Multivector::zero(sig);
    for mask in 0..8u8 {
        a = a
            .add(&Multivector::basis_blade(a.signature().clone(), mask).scale(0.25 * mask as f64 + 0.5))
            .expect("same signature");
        m = m
            .add(&Multivector::basis_blade(m.signature().clone(), mask).scale(1.0 - 0.1 * mask as f64))
            .expect("same signature");
    }
    c.bench_function("geometric_product_cl21", |b| b.iter(|| a.geometric_product(&m)));
}

criterion_group!(benches, ring_ops, contour_ops, root_ops, clifford_ops);
criterion_main!(benches);

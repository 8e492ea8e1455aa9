//! Benchmarks for the hot paths: enumeration, matrix construction and
//! characteristic polynomials, matrix order modulo n, the per-(polynomial, n)
//! survey work unit, discriminants, the closed-form Weil test, and the
//! integer factoring that backs the order computation.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::{BigInt, BigUint};
use weilcid_core::exact::{factorize, is_prime, IntPoly};
use weilcid_core::frobenius::{
    frobenius_matrix, matrix_order_mod, order_discriminant, reduce_mod,
};
use weilcid_core::monogeneity::splitting_report;
use weilcid_core::weil::{enumerate_weil, is_weil_dim2, CoeffFix, WeilPoly};

fn wp(p: u64, g: usize, free: &[i64]) -> WeilPoly {
    let free: Vec<BigInt> = free.iter().map(|&v| BigInt::from(v)).collect();
    WeilPoly::from_free_coeffs(p, 1, g, &free).expect("valid Weil data")
}

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    group.bench_function("sextics_f2", |b| {
        b.iter(|| enumerate_weil(black_box(2), 1, 3, &CoeffFix::new()).unwrap().len())
    });
    group.bench_function("quartics_f5", |b| {
        b.iter(|| enumerate_weil(black_box(5), 1, 2, &CoeffFix::new()).unwrap().len())
    });
    group.finish();
}

fn bench_frobenius(c: &mut Criterion) {
    let sextic = wp(2, 3, &[-2, 2, -2]);
    c.bench_function("frobenius_charpoly_sextic", |b| {
        b.iter(|| {
            let m = frobenius_matrix(black_box(&sextic)).unwrap();
            black_box(m.matrix().charpoly());
        })
    });
    let octic = wp(2, 4, &[0, 0, 0, 0]);
    let sigma = frobenius_matrix(&octic).unwrap().into_matrix();
    c.bench_function("matrix_order_octic_mod_17", |b| {
        b.iter(|| matrix_order_mod(&reduce_mod(black_box(&sigma), 17).unwrap()).unwrap())
    });
    c.bench_function("order_discriminant_sextic", |b| {
        b.iter(|| order_discriminant(black_box(&sextic)).unwrap())
    });
}

fn bench_survey_unit(c: &mut Criterion) {
    // One (polynomial, n) survey work unit: order, group size, verdict.
    let quartic = wp(3, 2, &[0, 0]);
    c.bench_function("splitting_report_quartic_n10", |b| {
        b.iter(|| splitting_report(black_box(&quartic), 10).unwrap())
    });
}

fn bench_weil_test(c: &mut Criterion) {
    // The closed-form test over the full F_5 quartic coefficient box.
    c.bench_function("is_weil_dim2_box_f5", |b| {
        b.iter(|| {
            let mut accepted = 0usize;
            for a3 in -10i64..=10 {
                for a2 in -31i64..=31 {
                    if is_weil_dim2(5, &BigInt::from(a3), &BigInt::from(a2)) {
                        accepted += 1;
                    }
                }
            }
            black_box(accepted)
        })
    });
    // The general Sturm path on a degree-8 candidate.
    let octic = wp(2, 4, &[0, 0, 0, 0]);
    c.bench_function("is_weil_sturm_octic", |b| {
        b.iter(|| black_box(&octic).is_weil())
    });
}

fn bench_factoring(c: &mut Criterion) {
    let semiprime = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
    c.bench_function("factorize_semiprime_12_digits", |b| {
        b.iter(|| factorize(black_box(&semiprime)).unwrap())
    });
    let mersenne = (BigUint::from(1u32) << 61) - 1u32;
    c.bench_function("is_prime_mersenne_61", |b| {
        b.iter(|| is_prime(black_box(&mersenne)))
    });
    // The lcm ingredient the order computation factors: 17^4 - 1.
    let lifted = BigUint::from(17u64.pow(4) - 1);
    c.bench_function("factorize_order_ingredient", |b| {
        b.iter(|| factorize(black_box(&lifted)).unwrap())
    });
    // A characteristic-polynomial determinant on the 8x8 integer matrix.
    let octic = wp(2, 4, &[0, 0, 0, 0]);
    let sigma = frobenius_matrix(&octic).unwrap().into_matrix();
    c.bench_function("det_octic_sigma", |b| b.iter(|| black_box(&sigma).det()));
    // Discriminant of the octic itself (16x16 resultant eliminations).
    let poly: IntPoly = octic.poly().clone();
    c.bench_function("discriminant_octic", |b| {
        b.iter(|| black_box(&poly).discriminant())
    });
}

criterion_group!(
    benches,
    bench_enumeration,
    bench_frobenius,
    bench_survey_unit,
    bench_weil_test,
    bench_factoring
);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qladder::families::{eval_explicit, eval_recurrence, EvalPoint};
use qladder::integrate::QuadConfig;
use qladder::measures::{aw_weight, qinv_hermite_measure};
use qladder::qcore::qpoch_inf;
use qladder::verify::{gram, run_suite, CheckId, Selection, SuiteConfig};
use qladder::{Complex64, QBase};
use qladder_bench::askey_wilson;

fn pochhammer(c: &mut Criterion) {
    let base = QBase::new(0.8).unwrap();
    c.bench_function("qpoch_inf q=0.8", |b| b.iter(|| qpoch_inf(black_box(Complex64::new(0.3, 0.2)), base)));
}

fn families(c: &mut Criterion) {
    let spec = askey_wilson(0.5);
    let x = EvalPoint::Trig(1.1);
    c.bench_function("askey-wilson recurrence n=12", |b| b.iter(|| eval_recurrence(&spec, black_box(12), x)));
    c.bench_function("askey-wilson explicit n=12", |b| b.iter(|| eval_explicit(&spec, black_box(12), x)));
}

fn grams(c: &mut Criterion) {
    let spec = askey_wilson(0.5);
    let w = aw_weight([0.37, -0.29, 0.21, 0.33], spec.base).unwrap();
    let cfg = QuadConfig::default();
    c.bench_function("askey-wilson gram 8x8", |b| b.iter(|| gram(&spec, &spec, &w, 8, &cfg)));
    let base = QBase::new(0.3).unwrap();
    let mu = qinv_hermite_measure(0.8, base).unwrap();
    let h = qladder::FamilySpec::new(qladder::FamilyId::QInvHermite, base);
    c.bench_function("q^-1-hermite gram 8x8 (N-extremal)", |b| b.iter(|| gram(&h, &h, &mu, 8, &cfg)));
}

fn suites(c: &mut Criterion) {
    let cfg = SuiteConfig {
        selection: Selection::Checks(vec![CheckId::AskeyWilsonIntegral, CheckId::Sears]),
        qs: vec![0.5],
        ..SuiteConfig::default()
    };
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    g.bench_function("INT_2_16 + ID_2_20 at q=0.5", |b| b.iter(|| run_suite(&cfg)));
    g.finish();
}

criterion_group!(benches, pochhammer, families, grams, suites);
criterion_main!(benches);

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use polymaass::kloosterman::{kloosterman_sum, l_series, LSeriesSpec};
use polymaass::modforms::duke_jenkins;
use polymaass::operators::{laplacian_on_expansion, xi_numeric, SampledForm};
use polymaass::poincare::{poincare_direct, poincare_fourier, taylor_expansion};
use polymaass::special::{mplus, u_jet, whittaker_W, Sign, WhittakerParams};
use polymaass::{Complex64, EvalPoint, PoincareSpec, TruncationPolicy};

fn qseries(c: &mut Criterion) {
    c.bench_function("duke_jenkins f_{0,5} to q^50", |b| {
        b.iter(|| duke_jenkins(0, black_box(5), 50).unwrap())
    });
}

fn special(c: &mut Criterion) {
    let p = WhittakerParams::new(1.0, 1.3, 7.0);
    c.bench_function("whittaker W", |b| {
        b.iter(|| whittaker_W(black_box(p)).unwrap())
    });
    c.bench_function("whittaker M+", |b| b.iter(|| mplus(black_box(p)).unwrap()));
    c.bench_function("u jet k=-2 n=3", |b| {
        b.iter(|| u_jet(-2, 3, Sign::Plus, black_box(1.1)).unwrap())
    });
}

fn kloosterman(c: &mut Criterion) {
    c.bench_function("K(7, -3, 9973)", |b| {
        b.iter(|| kloosterman_sum(7, -3, black_box(9973)).unwrap())
    });
    let spec = LSeriesSpec {
        m: 1,
        n: 2,
        s: Complex64::new(1.5, 0.0),
        c_max: 2000,
    };
    c.bench_function("L_{1,2}(1.5) c<=2000", |b| {
        b.iter(|| l_series(black_box(spec)).unwrap())
    });
}

fn poincare(c: &mut Criterion) {
    let mut g = c.benchmark_group("poincare");
    g.sample_size(10);
    let pol = TruncationPolicy {
        c_max: 2000,
        ..Default::default()
    };
    let spec = PoincareSpec::new(4, 1, 0, Complex64::new(1.6, 0.0)).unwrap();
    let z = EvalPoint::new(0.1, 1.0).unwrap();
    g.bench_function("direct (4,1,1.6)", |b| {
        b.iter(|| poincare_direct(spec, black_box(z), &pol).unwrap())
    });
    g.bench_function("fourier (4,1,1.6)", |b| {
        b.iter(|| poincare_fourier(spec, black_box(z), &pol).unwrap())
    });
    let t = PoincareSpec::new(0, -1, 1, Complex64::new(0.0, 0.0)).unwrap();
    g.bench_function("taylor table F_{0,-1,1}", |b| {
        b.iter(|| taylor_expansion(black_box(t), &pol).unwrap())
    });
    g.finish();
}

fn operators(c: &mut Criterion) {
    let pol = TruncationPolicy {
        c_max: 2000,
        ..Default::default()
    };
    let t = taylor_expansion(
        PoincareSpec::new(0, -1, 1, Complex64::new(0.0, 0.0)).unwrap(),
        &pol,
    )
    .unwrap();
    c.bench_function("laplacian on table", |b| {
        b.iter(|| laplacian_on_expansion(black_box(&t)).unwrap())
    });
    let sf = SampledForm::from_expansion(t);
    let z = EvalPoint::new(0.0, 1.0).unwrap();
    c.bench_function("xi stencil on table", |b| {
        b.iter(|| xi_numeric(&sf, black_box(z), 1e-4).unwrap())
    });
}

criterion_group!(benches, qseries, special, kloosterman, poincare, operators);
criterion_main!(benches);

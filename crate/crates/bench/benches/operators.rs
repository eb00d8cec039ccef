use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use kirchhoff_nf::fields::{w_full, x3_plus, x5_plus};
use kirchhoff_nf::sample::Sampler;
use kirchhoff_nf::shell::{project_to_shells, shell_rhs};
use kirchhoff_nf::transforms::{k_apply, phi_next, phi_next_inverse};
use kirchhoff_nf::{ConjugatePairState, ModeSet, RegularityParams};

const SUPPORTS: [(usize, f64); 3] = [(1, 8.0), (2, 4.0), (3, 2.5)];

fn fields(c: &mut Criterion) {
    let mut g = c.benchmark_group("fields");
    for (dim, radius) in SUPPORTS {
        let modes = ModeSet::ball(dim, radius).unwrap();
        let reg = RegularityParams::for_dimension(dim).unwrap();
        let y = Sampler::new(1).conjugate_pair(&modes, reg.m1, 0.01);
        let id = format!("d{dim}_r{radius}_n{}", modes.len());
        g.bench_with_input(BenchmarkId::new("x3_plus", &id), &y, |b, y| b.iter(|| x3_plus(black_box(y))));
        g.bench_with_input(BenchmarkId::new("x5_plus", &id), &y, |b, y| b.iter(|| x5_plus(black_box(y))));
        g.bench_with_input(BenchmarkId::new("k_apply", &id), &y, |b, y| b.iter(|| k_apply(black_box(y), y)));
        g.bench_with_input(BenchmarkId::new("w_full", &id), &y, |b, y| b.iter(|| w_full(black_box(y), &reg).unwrap()));
    }
    g.finish();
}

fn transforms(c: &mut Criterion) {
    let mut g = c.benchmark_group("transforms");
    for (dim, radius) in SUPPORTS {
        let modes = ModeSet::ball(dim, radius).unwrap();
        let reg = RegularityParams::for_dimension(dim).unwrap();
        let y = Sampler::new(2).conjugate_pair(&modes, reg.m1, 0.01);
        let fg = phi_next(&y, &reg).unwrap();
        let id = format!("d{dim}_r{radius}_n{}", modes.len());
        g.bench_with_input(BenchmarkId::new("phi_next", &id), &y, |b, y| b.iter(|| phi_next(black_box(y), &reg).unwrap()));
        g.bench_with_input(BenchmarkId::new("phi_next_inverse", &id), &fg, |b, fg| {
            b.iter(|| phi_next_inverse(black_box(fg), &reg).unwrap())
        });
    }
    g.finish();
}

fn shells(c: &mut Criterion) {
    let modes = ModeSet::ball(2, 10.0).unwrap();
    let first = Sampler::new(3).complex_field(&modes, 1.0, 1.0);
    let spec = project_to_shells(&ConjugatePairState::from_first(first));
    c.bench_function(&format!("shell_rhs/{}_shells", spec.len()), |b| b.iter(|| shell_rhs(black_box(&spec))));
}

criterion_group!(benches, fields, transforms, shells);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use precur::arith::{int, rat, Rational};
use precur::batch;
use precur::recurrence::{InitialPair, Order2Rec};

fn restricted(b0: i64, a1: i64, a2: i64, q: &Rational) -> Option<Order2Rec> {
    if a1 == 0 || a2 == 0 {
        return None;
    }
    let b1 = int(a1) * (q + int(b0));
    let b2 = (int(2 * a2) * &b1 - int(a1 * a2 * b0)) / int(a1);
    Order2Rec::new(int(b0), int(a1), b1, int(a2), b2).ok()
}

fn grid() -> Vec<Order2Rec> {
    let qs = [rat(-1, 2), int(-1), rat(-3, 2), int(-2), rat(1, 3), rat(-2, 3)];
    let mut out = Vec::new();
    for b0 in 0..4 {
        for a1 in -3..=3 {
            for a2 in -3..=3 {
                for q in &qs {
                    out.extend(restricted(b0, a1, a2, q));
                }
            }
        }
    }
    out
}

fn bench_decide(c: &mut Criterion) {
    let recs = grid();
    let mut g = c.benchmark_group("decide_grid");
    g.bench_with_input(BenchmarkId::new("sequential", recs.len()), &recs, |b, r| b.iter(|| batch::decide_all_sequential(r)));
    g.bench_with_input(BenchmarkId::new("parallel", recs.len()), &recs, |b, r| b.iter(|| batch::decide_all(r)));
    g.finish();
}

fn bench_probe(c: &mut Criterion) {
    let jobs: Vec<(Order2Rec, InitialPair)> = grid().into_iter().take(48).map(|r| (r, InitialPair::ints(0, 1))).collect();
    let mut g = c.benchmark_group("probe_depth_120");
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(|| batch::probe_all_sequential(&jobs, 120, 50)));
    g.bench_function("parallel", |b| b.iter(|| batch::probe_all(&jobs, 120, 50)));
    g.finish();
}

criterion_group!(benches, bench_decide, bench_probe);
criterion_main!(benches);

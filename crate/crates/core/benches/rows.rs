use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use orlicz_dynamics::criteria::check_transitive_with;
use orlicz_dynamics::{Exec, FiniteSet, GroupElement, Strategy, Weight, WeightedTranslation, YoungFunction};

fn policies() -> Vec<(&'static str, Exec)> {
    let mut out = vec![("sequential", Exec::Sequential)];
    #[cfg(feature = "parallel")]
    out.push(("parallel", Exec::Parallel));
    out
}

fn transitive_rows(c: &mut Criterion) {
    let op = WeightedTranslation::new(GroupElement::scalar(1), Weight::paper_step()).unwrap();
    let phi = YoungFunction::paper_entropy();
    let mut group = c.benchmark_group("check_transitive");
    group.sample_size(10);
    for (half_width, horizon) in [(3i64, 80usize), (20, 160)] {
        let k = FiniteSet::range(-half_width, half_width);
        for (name, exec) in policies() {
            group.bench_with_input(
                BenchmarkId::new(name, format!("K{}_h{horizon}", k.len())),
                &k,
                |b, k| {
                    b.iter(|| {
                        check_transitive_with(exec, &op, &phi, black_box(k), horizon, 1e-6, Strategy::Greedy)
                            .unwrap()
                    })
                },
            );
        }
    }
    group.finish();
}

criterion_group!(benches, transitive_rows);
criterion_main!(benches);

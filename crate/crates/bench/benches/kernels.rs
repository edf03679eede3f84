use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use orbitlab::bogomod::build_mq;
use orbitlab::coadjoint::Coadjoint;
use orbitlab::grouptab::library;
use orbitlab::zetalab::{dirichlet_product, product_series, sl2_degrees, FactorSpec, SeriesMode};
use orbitlab::{AlgebraGroup, Budgets, Field, NilAlgebra};

fn field_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("field");
    for (p, e) in [(2, 8), (3, 5), (251, 1)] {
        let f = Field::new(p, e).unwrap();
        let elems: Vec<_> = (0..f.q()).map(|i| f.element(i).unwrap()).collect();
        group.bench_with_input(BenchmarkId::new("mul_all_pairs", f.q()), &elems, |b, elems| {
            b.iter(|| {
                let mut acc = f.one();
                for &x in elems {
                    for &y in elems.iter().step_by(7) {
                        acc = f.add(acc, f.mul(x, y));
                    }
                }
                black_box(acc)
            })
        });
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    let budgets = Budgets::default();
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (n, p) in [(4, 2), (4, 3), (5, 2)] {
        let alg = NilAlgebra::make_unitriangular(n, &Field::prime(p).unwrap(), &budgets).unwrap();
        let co = Coadjoint::new(alg);
        group.bench_function(format!("u{n}(F{p})"), |b| b.iter(|| black_box(co.census(&budgets).unwrap().count())));
    }
    let alg = NilAlgebra::make_unitriangular(4, &Field::prime(3).unwrap(), &budgets).unwrap();
    let g = AlgebraGroup::new(alg);
    group.bench_function("classes u4(F3)", |b| b.iter(|| black_box(g.class_count(&budgets).unwrap())));
    group.finish();
}

fn mq(c: &mut Criterion) {
    let budgets = Budgets::default();
    let mut group = c.benchmark_group("mq");
    group.sample_size(10);
    for name in ["D16", "C4xC4", "Heis27"] {
        let g = library::named_group(name, &budgets).unwrap();
        let p = g.p_group_prime().unwrap();
        group.bench_function(name, |b| b.iter(|| black_box(build_mq(&g, p, 2, &budgets).unwrap().order().unwrap())));
    }
    group.finish();
}

fn dirichlet(c: &mut Criterion) {
    let budgets = Budgets::default();
    let mut group = c.benchmark_group("dirichlet");
    group.sample_size(10);
    let cutoff = 100_000;
    let f = sl2_degrees(5).unwrap().series(cutoff);
    let g = sl2_degrees(7).unwrap().series(cutoff);
    group.bench_function("sparse product", |b| b.iter(|| black_box(dirichlet_product(&f, &g, cutoff).unwrap())));
    let dense = product_series(&FactorSpec::sl2_tower(5, 4).unwrap(), cutoff, SeriesMode::Exact, &budgets).unwrap();
    group.bench_function("dense x sparse", |b| b.iter(|| black_box(dirichlet_product(&dense, &f, cutoff).unwrap())));
    let tower = FactorSpec::sl2_tower(5, 12).unwrap();
    group.bench_function("SL2(5^i) tower, N = 1e5", |b| {
        b.iter(|| black_box(product_series(&tower, cutoff, SeriesMode::Exact, &budgets).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, field_ops, census, mq, dirichlet);
criterion_main!(benches);

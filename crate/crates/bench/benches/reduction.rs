use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sigred::{parameterized_telescope, parse_expression, print_elem};
use sigred_bench::{differences, fresh, nested_context, parse};

fn round_trip(c: &mut Criterion) {
    let mut group = c.benchmark_group("round_trip");
    group.sample_size(10);
    for degree in [2, 4, 6, 8] {
        let (tower, fs) = differences(degree, 3);
        group.bench_with_input(BenchmarkId::from_parameter(degree), &fs, |b, fs| {
            b.iter(|| {
                for f in fs {
                    let pair = fresh(&tower).reduce(f).unwrap();
                    assert!(pair.is_summable());
                }
            })
        });
    }
    group.finish();
}

fn nested_examples(c: &mut Criterion) {
    let mut group = c.benchmark_group("nested");
    group.bench_function("reduce_t2_over_x", |b| {
        b.iter_batched(
            nested_context,
            |mut ctx| {
                let f = parse(&ctx, "t2/x");
                ctx.reduce(&f).unwrap()
            },
            criterion::BatchSize::SmallInput,
        )
    });
    group.bench_function("param_telescope", |b| {
        b.iter_batched(
            nested_context,
            |mut ctx| {
                let fs: Vec<_> = ["(1+t1-t2-x*t2)/((1+t1)*(1+x))", "(x*t1+t1-x)/((x*t1+t1+1)*t1)", "3*t2/(1+t1)"]
                    .iter()
                    .map(|s| parse(&ctx, s))
                    .collect();
                parameterized_telescope(&mut ctx, &fs).unwrap()
            },
            criterion::BatchSize::SmallInput,
        )
    });
    group.finish();
}

fn syntax(c: &mut Criterion) {
    let ctx = nested_context();
    let src = "((3*x^3*t1*t2 - x^3*t1^3 - 3*x^2*t2 + 1)/(3*x^3))^2 + t2/(x+1)";
    let e = parse(&ctx, src);
    c.bench_function("parse", |b| b.iter(|| parse_expression(src, ctx.tower()).unwrap()));
    c.bench_function("print", |b| b.iter(|| print_elem(ctx.tower(), &e)));
}

criterion_group!(benches, round_trip, nested_examples, syntax);
criterion_main!(benches);

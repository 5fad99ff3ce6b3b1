//! Fixed inputs shared by the criterion benches.

use sigred::workload::{bench_instance, bench_tower};
use sigred::{parse_expression, Elem, ReductionContext, ReductionOptions, TowerFile, TowerSpec};

pub const SEED: u64 = 0x5eed;

/// `Delta(p)` for the first `count` seeded random `p` of total degree `degree`.
pub fn differences(degree: usize, count: usize) -> (TowerSpec, Vec<Elem>) {
    let tower = bench_tower();
    let fs = (0..count).map(|trial| tower.delta(&bench_instance(&tower, SEED, degree, trial))).collect();
    (tower, fs)
}

pub const NESTED_TOWER: &str = r#"
[[generator]]
name = "x"
delta = "1"
seed_reps = ["x"]

[[generator]]
name = "t1"
delta = "1/(x+1)"

[[generator]]
name = "t2"
delta = "((x+1)*t1+1)/(1+x)^2"
"#;

/// Fresh context for the nested harmonic tower.
pub fn nested_context() -> ReductionContext {
    TowerFile::parse(NESTED_TOWER).unwrap().context().unwrap()
}

pub fn fresh(tower: &TowerSpec) -> ReductionContext {
    ReductionContext::new(tower.clone(), ReductionOptions::default())
}

pub fn parse(ctx: &ReductionContext, src: &str) -> Elem {
    parse_expression(src, ctx.tower()).unwrap()
}

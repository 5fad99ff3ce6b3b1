//! Seeded random workloads: dense polynomials in chosen generators and the
//! round-trip timing harness.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Elem, Poly};
use crate::error::{Error, Result};
use crate::reduction::{ReductionContext, ReductionOptions};
use crate::tower::TowerSpec;

/// `x`, `t1` with `Delta = 1/(x+1)` and `t2` with `Delta = 1/(x+1)^2`.
pub fn bench_tower() -> TowerSpec {
    let mut tower = TowerSpec::new(vec![]).unwrap();
    tower.push_generator("x", Elem::one()).unwrap();
    let x1 = &tower.generator(1) + &Elem::one();
    tower.push_generator("t1", x1.inv()).unwrap();
    tower.push_generator("t2", x1.pow(-2)).unwrap();
    tower
}

/// Shape of a random polynomial: dense in `levels` up to total degree
/// `degree`, each coefficient a polynomial in the first generator of degree at
/// most `x_degree` with integer coefficients in `[-coeff_bound, coeff_bound]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyShape {
    pub levels: Vec<usize>,
    pub degree: usize,
    pub x_degree: usize,
    pub coeff_bound: i64,
}

impl PolyShape {
    pub fn dense(levels: Vec<usize>, degree: usize) -> PolyShape {
        PolyShape { levels, degree, x_degree: 0, coeff_bound: 9 }
    }
}

pub fn random_poly<R: Rng>(tower: &TowerSpec, shape: &PolyShape, rng: &mut R) -> Elem {
    let gens: Vec<Elem> = shape.levels.iter().map(|&l| tower.generator(l)).collect();
    let x = tower.generator(1);
    let mut acc = Elem::zero();
    for exps in exponent_vectors(gens.len(), shape.degree) {
        let coeff = Elem::from_poly(Poly::new(
            tower.var_of_level(1),
            (0..=shape.x_degree).map(|_| Elem::int(rng.gen_range(-shape.coeff_bound..=shape.coeff_bound))).collect(),
        ));
        if coeff.is_zero() {
            continue;
        }
        let mono = gens.iter().zip(&exps).fold(Elem::one(), |m, (g, &e)| &m * &g.pow(e as i64));
        acc = &acc + &(&coeff * &mono);
    }
    debug_assert!(shape.x_degree == 0 || tower.indicator(&x) == 1);
    acc
}

/// All exponent vectors of length `n` with sum at most `degree`.
fn exponent_vectors(n: usize, degree: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for e in 0..=degree {
        for mut rest in exponent_vectors(n - 1, degree - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchProfile {
    pub degrees: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub degree: usize,
    pub times: Vec<Duration>,
    pub all_summable: bool,
}

impl BenchRow {
    pub fn mean(&self) -> Duration {
        self.times.iter().sum::<Duration>() / self.times.len().max(1) as u32
    }

    pub fn median(&self) -> Duration {
        let mut t = self.times.clone();
        t.sort();
        t.get(t.len() / 2).copied().unwrap_or_default()
    }
}

/// Random `p` for trial `trial` at `degree`; identical across runs for a seed.
pub fn bench_instance(tower: &TowerSpec, seed: u64, degree: usize, trial: usize) -> Elem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((degree as u64) << 32) ^ trial as u64);
    random_poly(tower, &PolyShape::dense(vec![2, 3], degree), &mut rng)
}

/// Times the reduction of `Delta(p)` for random `p` in the benchmark tower,
/// with a fresh context per trial, and checks that `p` is recovered.
pub fn run_bench(profile: &BenchProfile, options: &ReductionOptions) -> Result<Vec<BenchRow>> {
    let tower = bench_tower();
    let mut rows = Vec::new();
    for &degree in &profile.degrees {
        let mut row = BenchRow { degree, times: Vec::new(), all_summable: true };
        for trial in 0..profile.trials {
            let p = bench_instance(&tower, profile.seed, degree, trial);
            let f = tower.delta(&p);
            let mut ctx = ReductionContext::new(tower.clone(), options.clone());
            let start = Instant::now();
            let pair = ctx.reduce(&f)?;
            row.times.push(start.elapsed());
            if !pair.r.is_zero() || !tower.is_constant(&(&pair.g - &p)) {
                row.all_summable = false;
            }
        }
        if !row.all_summable {
            return Err(Error::InvalidInput(format!("round trip failed at degree {degree}")));
        }
        rows.push(row);
    }
    Ok(rows)
}

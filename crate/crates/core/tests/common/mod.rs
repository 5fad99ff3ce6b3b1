#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use sigred::arith::Poly;
use sigred::basis::coefficient;
use sigred::{parse_expression, Elem, ReductionContext, ReductionOptions, TowerSpec};

pub const PROPERTY_CASES: u32 = 256;
pub const PROPERTY_SEED: u64 = 0x51_93_ed_0c;

pub fn config() -> Config {
    Config {
        cases: PROPERTY_CASES,
        rng_seed: RngSeed::Fixed(PROPERTY_SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

/// `x`, `t1 = H` and `t2` with `Delta(t2) = sigma(t1/x)`, representatives at
/// the `x` level seeded with `{x}`.
pub fn nested(params: &[&str]) -> ReductionContext {
    nested_with(params, ReductionOptions::default())
}

pub fn nested_with(params: &[&str], options: ReductionOptions) -> ReductionContext {
    let mut tower = TowerSpec::new(params.iter().map(|s| s.to_string()).collect()).unwrap();
    tower.push_generator("x", Elem::one()).unwrap();
    let d1 = parse_expression("1/(x+1)", &tower).unwrap();
    tower.push_generator("t1", d1).unwrap();
    let d2 = parse_expression("((x+1)*t1+1)/(1+x)^2", &tower).unwrap();
    tower.push_generator("t2", d2).unwrap();
    seeded(tower, options)
}

pub fn harmonic() -> ReductionContext {
    let mut tower = TowerSpec::new(vec![]).unwrap();
    tower.push_generator("x", Elem::one()).unwrap();
    let d1 = parse_expression("1/(x+1)", &tower).unwrap();
    tower.push_generator("t1", d1).unwrap();
    seeded(tower, ReductionOptions::default())
}

pub fn seeded(tower: TowerSpec, options: ReductionOptions) -> ReductionContext {
    let v = tower.var_of_level(1);
    let mut ctx = ReductionContext::new(tower, options);
    ctx.seed_representative(1, &Poly::monomial(v, Elem::one(), 1)).unwrap();
    ctx
}

pub fn parse(ctx: &ReductionContext, s: &str) -> Elem {
    parse_expression(s, ctx.tower()).unwrap()
}

/// Denominator of a random term.
#[derive(Clone, Debug)]
pub enum Den {
    One,
    /// `x + k`
    X(i64),
    /// `t1 + k/(x + j)`
    T1(i64, i64),
    /// `(t1 + k)^2`
    T1Sq(i64),
    /// `t2 + k t1`
    T2(i64),
}

/// `c(x) t1^e1 t2^e2 / den` with `c(x) = (c0 + c1 x)/(x + c2)` (no
/// denominator when `c2 = 0`).
#[derive(Clone, Debug)]
pub struct Term {
    pub c: [i64; 3],
    pub e1: u32,
    pub e2: u32,
    pub den: Den,
}

pub fn term(max_level: usize) -> impl Strategy<Value = Term> {
    let e1 = if max_level >= 2 { 0..3u32 } else { 0..1 };
    let e2 = if max_level >= 3 { 0..2u32 } else { 0..1 };
    let mut dens = vec![Just(Den::One).boxed(), (-3..4i64).prop_map(Den::X).boxed()];
    if max_level >= 2 {
        dens.push((-2..3i64, 1..4i64).prop_map(|(k, j)| Den::T1(k, j)).boxed());
        dens.push((-2..3i64).prop_map(Den::T1Sq).boxed());
    }
    if max_level >= 3 {
        dens.push((-2..3i64).prop_map(Den::T2).boxed());
    }
    ([-4..5i64, -3..4i64, 0..4i64], e1, e2, prop::strategy::Union::new(dens)).prop_map(|(c, e1, e2, den)| Term {
        c,
        e1,
        e2,
        den,
    })
}

pub fn recipe(max_level: usize, max_terms: usize) -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec(term(max_level), 1..=max_terms)
}

pub fn build(tower: &TowerSpec, terms: &[Term]) -> Elem {
    let x = tower.generator(1);
    let int = Elem::int;
    let gen = |level: usize| if level <= tower.height() { tower.generator(level) } else { Elem::zero() };
    let t1 = gen(2);
    let t2 = gen(3);
    let mut acc = Elem::zero();
    for t in terms {
        let mut c = &int(t.c[0]) + &(&int(t.c[1]) * &x);
        if t.c[2] != 0 {
            c = &c / &(&x + &int(t.c[2]));
        }
        let mono = &t1.pow(t.e1 as i64) * &t2.pow(t.e2 as i64);
        let den = match t.den {
            Den::One => Elem::one(),
            Den::X(k) => &x + &int(k),
            Den::T1(k, j) => &t1 + &(&int(k) / &(&x + &int(j))),
            Den::T1Sq(k) => (&t1 + &int(k)).pow(2),
            Den::T2(k) => &t2 + &(&int(k) * &t1),
        };
        acc = &acc + &(&(&c * &mono) / &den);
    }
    acc
}

/// Sample rational constants.
pub fn constant() -> impl Strategy<Value = Elem> {
    (-5..6i64, 1..4i64).prop_map(|(n, d)| Elem::rat(n, d))
}

fn fail(msg: String) -> Result<(), TestCaseError> {
    Err(TestCaseError::fail(msg))
}

fn ok_or_fail<T>(r: sigred::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(format!("engine error: {e}")))
}

pub fn check_exactness(terms: &[Term]) -> Result<(), TestCaseError> {
    let mut ctx = nested(&[]);
    let f = build(ctx.tower(), terms);
    let pair = ok_or_fail(ctx.reduce(&f))?;
    if !pair.verify(ctx.tower(), &f) {
        return fail(format!("Delta(g) + r != f for {f:?}"));
    }
    Ok(())
}

pub fn check_kernel(terms: &[Term]) -> Result<(), TestCaseError> {
    let mut ctx = nested(&[]);
    let h = build(ctx.tower(), terms);
    let f = ctx.tower().delta(&h);
    let pair = ok_or_fail(ctx.reduce(&f))?;
    if !pair.r.is_zero() {
        return fail(format!("nonzero remainder for a difference: {:?}", pair.r));
    }
    if !ctx.tower().is_constant(&(&pair.g - &h)) {
        return fail("certificate differs from the antidifference by a nonconstant".into());
    }
    Ok(())
}

pub fn check_idempotence(terms: &[Term]) -> Result<(), TestCaseError> {
    let mut ctx = nested(&[]);
    let f = build(ctx.tower(), terms);
    let r = ok_or_fail(ctx.reduce(&f))?.r;
    let again = ok_or_fail(ctx.reduce(&r))?;
    if again.r != r || !ctx.tower().is_constant(&again.g) {
        return fail(format!("remainder not fixed: {r:?} -> {:?}", again.r));
    }
    Ok(())
}

pub fn check_linearity(a: &[Term], b: &[Term], alpha: &Elem, beta: &Elem) -> Result<(), TestCaseError> {
    let mut ctx = nested(&[]);
    let f1 = build(ctx.tower(), a);
    let f2 = build(ctx.tower(), b);
    let r1 = ok_or_fail(ctx.reduce(&f1))?.r;
    let r2 = ok_or_fail(ctx.reduce(&f2))?.r;
    let combo = &(alpha * &f1) + &(beta * &f2);
    let r = ok_or_fail(ctx.reduce(&combo))?.r;
    if r != &(alpha * &r1) + &(beta * &r2) {
        return fail("remainder map is not linear".into());
    }
    Ok(())
}

pub fn check_indicator(terms: &[Term]) -> Result<(), TestCaseError> {
    let mut ctx = nested(&[]);
    let f = build(ctx.tower(), terms);
    let r = ok_or_fail(ctx.reduce(&f))?.r;
    if ctx.tower().indicator(&r) > ctx.tower().indicator(&f) {
        return fail("remainder lies above the input's level".into());
    }
    Ok(())
}

/// For `f` one level below `level`: `psi(f) = phi(f) + c~ phi(Delta t)` with
/// `c~ = -theta*(phi(f))/c`.
/// For `level` 2 the terms are first restricted to `Q(x)`.
pub fn check_remainder_relation(terms: &[Term], level: usize) -> Result<(), TestCaseError> {
    let mut ctx = nested(&[]);
    let below: Vec<Term> = terms
        .iter()
        .cloned()
        .map(|mut t| {
            if level == 2 {
                t.e1 = 0;
                if !matches!(t.den, Den::One | Den::X(_)) {
                    t.den = Den::One;
                }
            }
            t
        })
        .collect();
    let f = build(ctx.tower(), &below);
    let phi = ok_or_fail(ctx.complete_reduction(&f, level - 1))?.r;
    let psi = ok_or_fail(ctx.complete_reduction(&f, level))?.r;
    let first = ok_or_fail(ctx.first_pair(level))?;
    let second = ok_or_fail(ctx.second_pair(level))?;
    let ct = -&(&coefficient(ctx.tower(), &phi, &second.theta) / &second.c);
    if psi != &phi + &(&ct * &first.v) {
        return fail(format!("relation fails at level {level}"));
    }
    Ok(())
}

/// Degree of the polynomial part and of the proper part's denominator in `v`.
pub fn degree_profile(f: &Elem, v: sigred::Var) -> (i64, i64) {
    let (poly, proper) = sigred::arith::poly_proper_split(f, v);
    (poly.degree(), proper.denom(v).degree())
}

/// `f = Delta(p) + h` with known `h`: the remainder is no larger than `h`.
/// Sums of several `t2 + k t1` denominators need those classes known to the
/// factorization oracle, so they are seeded.
pub fn check_minimality(p: &[Term], h: &[Term]) -> Result<(), TestCaseError> {
    let mut ctx = nested(&[]);
    let v = ctx.tower().var_of_level(3);
    for k in -2..3 {
        let rep = parse(&ctx, &format!("t2 + {k}*t1"));
        ok_or_fail(ctx.seed_representative(3, &rep.numer(v)))?;
    }
    let p = build(ctx.tower(), p);
    let h = build(ctx.tower(), h);
    let f = &ctx.tower().delta(&p) + &h;
    let r = ok_or_fail(ctx.reduce(&f))?.r;
    let v = ctx.tower().var_of_level(ctx.height());
    let (rp, rd) = degree_profile(&r, v);
    let (hp, hd) = degree_profile(&h, v);
    if rp > hp || rd > hd {
        return fail(format!("remainder degrees ({rp}, {rd}) exceed ({hp}, {hd})"));
    }
    Ok(())
}

/// A proper fraction over powers of a representative at shift 0 is its own
/// remainder.
pub fn check_simple_fixed(k: i64, j: i64, m: u32, num: [i64; 2]) -> Result<(), TestCaseError> {
    let mut ctx = nested(&[]);
    let rep = parse(&ctx, &format!("t1 + {k}/(x + {j})"));
    let v = ctx.tower().var_of_level(2);
    ok_or_fail(ctx.seed_representative(2, &rep.numer(v)))?;
    let a = parse(&ctx, &format!("({} + {}*x)/(x+{j})", num[0], num[1]));
    if a.is_zero() {
        return Ok(());
    }
    let f = &a / &rep.pow(m as i64);
    let pair = ok_or_fail(ctx.complete_reduction(&f, 2))?;
    if pair.r != f || !pair.g.is_zero() {
        return fail(format!("sigma-simple element changed: {:?}", pair.r));
    }
    Ok(())
}

pub fn check_fast_path(terms: &[Term]) -> Result<(), TestCaseError> {
    use sigred::FastPathMode;
    let ring: Vec<Term> = terms
        .iter()
        .cloned()
        .map(|mut t| {
            if !matches!(t.den, Den::One | Den::X(_)) {
                t.den = Den::One;
            }
            t
        })
        .collect();
    let mut on = nested_with(&[], ReductionOptions { fast_path: FastPathMode::On, ..ReductionOptions::default() });
    let mut off = nested_with(&[], ReductionOptions { fast_path: FastPathMode::Off, ..ReductionOptions::default() });
    let f = build(on.tower(), &ring);
    if !on.is_ring_element(&f) {
        return Ok(());
    }
    let a = ok_or_fail(on.reduce(&f))?;
    let b = ok_or_fail(off.reduce(&f))?;
    if a != b {
        return fail("fast path and full path disagree".into());
    }
    Ok(())
}

/// Random `p` in `Q(x)[t1, t2]` of total degree `degree` in the benchmark tower.
pub fn check_round_trip(degree: usize, x_degree: usize, seed: u64) -> Result<(), TestCaseError> {
    use rand::SeedableRng;
    use sigred::workload::{bench_tower, random_poly, PolyShape};
    let tower = bench_tower();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let shape = PolyShape { levels: vec![2, 3], degree, x_degree, coeff_bound: 9 };
    let p = random_poly(&tower, &shape, &mut rng);
    let f = tower.delta(&p);
    let mut ctx = ReductionContext::new(tower.clone(), ReductionOptions::default());
    let pair = ok_or_fail(ctx.reduce(&f))?;
    if !pair.r.is_zero() || tower.delta(&pair.g) != f {
        return fail(format!("round trip failed at degree {degree}"));
    }
    Ok(())
}

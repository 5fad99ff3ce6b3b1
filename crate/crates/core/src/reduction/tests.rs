use super::*;

fn int(n: i64) -> Elem {
    Elem::int(n)
}

/// `x`, `t1 = H`, optionally `t2` with `Delta(t2) = sigma(t1/x)`.
fn context(with_t2: bool) -> ReductionContext {
    let mut tower = TowerSpec::new(vec![]).unwrap();
    tower.push_generator("x", int(1)).unwrap();
    let x = tower.generator(1);
    tower.push_generator("t1", (&x + &int(1)).inv()).unwrap();
    if with_t2 {
        let t1 = tower.generator(2);
        let d = tower.sigma(&(&t1 / &x));
        tower.push_generator("t2", d).unwrap();
    }
    let mut ctx = ReductionContext::new(tower, ReductionOptions::default());
    ctx.seed_representative(1, &Poly::monomial(0, int(1), 1)).unwrap();
    ctx
}

fn x() -> Elem {
    Elem::var(0)
}

fn t() -> Elem {
    Elem::var(1)
}

fn t2() -> Elem {
    Elem::var(2)
}

#[test]
fn proper_part_telescopes() {
    let mut ctx = context(false);
    // -1/((x+1) t^2 + t)
    let den = &(&(&x() + &int(1)) * &(&t() * &t())) + &t();
    let f = -&den.inv();
    let (g, h) = ctx.reduce_proper(&f, 2).unwrap();
    assert_eq!(g, t().inv());
    assert!(h.is_zero());
    assert_eq!(ctx.representatives(2).members(), &[Poly::monomial(1, int(1), 1)]);
}

fn aux_input() -> Poly {
    let x = x();
    let x1 = &x + &int(1);
    // -t^2/(x(1+x)) + (x^2+4x+1)/(x(1+x)^2) t
    let c2 = -&(&x * &x1).inv();
    let c1 = &(&(&x * &x) + &(&(&int(4) * &x) + &int(1))) / &(&x * &(&x1 * &x1));
    Poly::new(1, vec![Elem::zero(), c1, c2])
}

#[test]
fn auxiliary_split() {
    let mut ctx = context(false);
    let (q, r) = ctx.auxiliary_reduction(&aux_input(), 2).unwrap();
    let x = x();
    let x3 = x.pow(3);
    assert_eq!(q, Poly::new(1, vec![-&x3.inv(), Elem::zero(), x.inv()]));
    assert_eq!(r, Poly::new(1, vec![-&x3.inv(), x.inv()]));
}

#[test]
fn echelon_basis_entries() {
    let mut ctx = context(false);
    let basis = ctx.echelon_basis(2, 1).unwrap();
    let x = x();
    let xi = x.inv();
    let half_x2 = (&int(2) * &x.pow(2)).inv();
    assert_eq!(basis[0].b, Poly::constant(1, xi.clone()));
    assert_eq!(basis[1].b, Poly::new(1, vec![-&half_x2, xi.clone()]));
    assert_eq!(basis[0].w, Poly::new(1, vec![-&xi, int(1)]));
    assert_eq!(basis[1].w, Poly::new(1, vec![half_x2, -&xi, Elem::rat(1, 2)]));
    let tower = ctx.tower().clone();
    for e in &basis {
        let w = Elem::from_poly(e.w.clone());
        assert_eq!(tower.delta(&w), Elem::from_poly(e.b.clone()));
    }
}

#[test]
fn first_and_second_pairs() {
    let mut ctx = context(true);
    let fp = ctx.first_pair(2).unwrap();
    assert_eq!(fp, FirstPair { g: x().inv(), v: x().inv() });
    let sp = ctx.second_pair(2).unwrap();
    assert_eq!(sp.theta.to_elem(ctx.tower()), x().inv());
    assert_eq!(sp.c, int(1));

    let fp = ctx.first_pair(3).unwrap();
    let x2 = x().pow(2);
    let g = &(&int(1) + &(&x2 * &t().pow(2))) / &(&int(2) * &x2);
    assert_eq!(fp.g, g);
    assert_eq!(fp.v, (&int(2) * &x2).inv());
    let sp = ctx.second_pair(3).unwrap();
    assert_eq!(sp.theta.to_elem(ctx.tower()), x2.inv());
    assert_eq!(sp.c, Elem::rat(1, 2));
}

#[test]
fn polynomial_reduction_remainder() {
    let mut ctx = context(false);
    let (q, v) = ctx.reduce_polynomial(&aux_input(), 2).unwrap();
    let x = x();
    let expect = &(&int(2) * &x.pow(2)).inv() - &x.pow(3).inv();
    assert_eq!(v, Poly::constant(1, expect));
    let p = Elem::from_poly(aux_input());
    assert_eq!(&ctx.tower().delta(&Elem::from_poly(q)) + &Elem::from_poly(v), p);
}

fn refined_summand() -> Elem {
    let x = x();
    let t = t();
    let x1 = &x + &int(1);
    let num = &(&(&(&(&x * &(&(&x * &x) + &(&(&int(5) * &x) + &int(4)))) * &t.pow(3))
        + &(&(&(&x * &x) + &(&(&int(4) * &x) + &int(1))) * &t.pow(2)))
        - &(&(&x1 * &x1) * &t.pow(4)))
        - &(&(&x + &(&int(2) * &x.pow(2))) + &x.pow(3));
    let den = &(&(&x * &(&x1 * &x1)) * &(&(&int(1) + &t) + &(&t * &x))) * &t;
    &num / &den
}

#[test]
fn complete_reduction_harmonic() {
    let mut ctx = context(false);
    let f = refined_summand();
    let pair = ctx.reduce(&f).unwrap();
    let x = x();
    let t = t();
    let r = &(&x - &int(2)) / &(&int(2) * &x.pow(3));
    let g = &(&(&(&(&int(2) + &x) / &(&int(2) * &x)) * &t.pow(2)) - &(&t / &x)) + &(&r + &t.inv());
    assert_eq!(pair.r, r);
    assert_eq!(pair.g, g);
    assert!(pair.verify(ctx.tower(), &f));
}

#[test]
fn complete_reduction_nested() {
    let mut ctx = context(true);
    let x = x();
    let f = &t2() / &x;
    let pair = ctx.reduce(&f).unwrap();
    let x3 = x.pow(3);
    let num = &(&(&(&int(3) * &x3) * &(&t() * &t2())) - &(&x3 * &t().pow(3))) - &(&(&int(3) * &x.pow(2)) * &t2());
    let g = &(&num + &int(1)) / &(&int(3) * &x3);
    assert_eq!(pair.r, (&int(3) * &x3).inv());
    assert_eq!(pair.g, g);
}

#[test]
fn fast_path_agrees() {
    let f = &(&t2() * &t()) / &x();
    let mut auto = context(true);
    let mut off = context(true);
    off.options.fast_path = FastPathMode::Off;
    assert_eq!(auto.reduce(&f).unwrap(), off.reduce(&f).unwrap());

    let mut on = context(true);
    on.options.fast_path = FastPathMode::On;
    assert!(matches!(on.reduce(&t().inv()), Err(Error::InvalidInput(_))));
}

#[test]
fn remainders_of_differences_vanish() {
    let mut ctx = context(true);
    for g in [t().inv(), &t2() * &t(), &(&t2() * &t2()) / &(&x() + &int(3)), &t() / &(&t() + &x())] {
        let f = ctx.tower().delta(&g);
        let pair = ctx.reduce(&f).unwrap();
        assert!(pair.r.is_zero(), "remainder {:?}", pair.r);
        assert!(ctx.tower().is_constant(&(&pair.g - &g)));
    }
}

#[test]
fn summable_generator_is_rejected() {
    let mut tower = TowerSpec::new(vec![]).unwrap();
    tower.push_generator("x", int(1)).unwrap();
    let x = tower.generator(1);
    // Delta(1/x) as the difference of a new generator
    tower.push_generator("s", tower.delta(&x.inv())).unwrap();
    let mut ctx = ReductionContext::new(tower, ReductionOptions::default());
    assert!(matches!(ctx.first_pair(2), Err(Error::NotSigmaMonomial { .. })));
    let verdicts = validate_tower(&mut ctx);
    assert_eq!(verdicts[0], LevelVerdict::Valid);
    assert!(matches!(verdicts[1], LevelVerdict::Summable { .. }));
}

#[test]
fn size_limit() {
    let mut ctx = context(false);
    ctx.options.max_int_bits = Some(2);
    let f = &Elem::int(1000) / &(&x() + &int(1));
    assert!(matches!(ctx.reduce(&f), Err(Error::SizeLimit { .. })));
}

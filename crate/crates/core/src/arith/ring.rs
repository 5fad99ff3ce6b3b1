//! Gcds in the polynomial ring `Q[v0, v1, ...]`.
//!
//! Euclid over a field of rational functions lets coefficients grow without
//! bound. Clearing denominators and running a primitive remainder sequence
//! keeps every intermediate value a polynomial whose size stays bounded by the
//! inputs.

use super::{Elem, Poly};

/// True when `e` lies in `Q[v0, v1, ...]`.
#[cfg(test)]
fn is_integral(e: &Elem) -> bool {
    match e {
        Elem::Rat(_) => true,
        Elem::Frac(f) => f.den().is_one() && f.num().coeffs().iter().all(is_integral),
    }
}

/// Rational leading coefficient, recursing through the variables.
fn base_lc(e: &Elem) -> Elem {
    match e {
        Elem::Rat(_) => e.clone(),
        Elem::Frac(f) => base_lc(&f.num().lc()),
    }
}

/// A nonzero ring element `d` with `d * e` in the ring.
fn denominator(e: &Elem) -> Elem {
    match e {
        Elem::Rat(_) => Elem::one(),
        Elem::Frac(f) => {
            let l = common_denominator(f.num().coeffs().iter().chain(f.den().coeffs()));
            Elem::from_poly(f.den().scale(&l))
        }
    }
}

fn common_denominator<'a>(items: impl Iterator<Item = &'a Elem>) -> Elem {
    let mut acc = Elem::one();
    for c in items {
        let d = denominator(c);
        if d.is_one() {
            continue;
        }
        let g = ring_gcd(&acc, &d);
        acc = &acc * &exact_quo(&d, &g);
    }
    acc
}

/// `p` times a nonzero constant, with ring coefficients.
pub(crate) fn clear_denominators(p: &Poly) -> Poly {
    let d = common_denominator(p.coeffs().iter());
    if d.is_one() {
        p.clone()
    } else {
        p.scale(&d)
    }
}

/// `a / b` for ring elements where the quotient is known to lie in the ring.
pub(crate) fn exact_quo(a: &Elem, b: &Elem) -> Elem {
    if a.is_zero() {
        return Elem::zero();
    }
    let Some(u) = b.top_var() else {
        return a * &b.inv();
    };
    let v = a.top_var().expect("inexact ring division");
    let num = a.numer(v);
    if v > u {
        return Elem::from_poly(num.map_coeffs(|c| exact_quo(c, b)));
    }
    let den = b.numer(u);
    let db = den.deg().unwrap();
    let mut rest = num;
    let mut quo = Poly::zero(u);
    while let Some(dr) = rest.deg() {
        assert!(dr >= db, "inexact ring division");
        let term = Poly::monomial(u, exact_quo(&rest.lc(), &den.lc()), dr - db);
        rest = rest.sub(&term.mul(&den));
        quo = quo.add(&term);
    }
    Elem::from_poly(quo)
}

/// Gcd of two ring elements, normalized to rational leading coefficient one.
pub(crate) fn ring_gcd(a: &Elem, b: &Elem) -> Elem {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    match (a.top_var(), b.top_var()) {
        (None, _) | (_, None) => Elem::one(),
        (Some(u), Some(w)) if u > w => ring_gcd(&content(&a.numer(u)), b),
        (Some(u), Some(w)) if u < w => ring_gcd(a, &content(&b.numer(w))),
        (Some(u), _) => {
            let (p, q) = (a.numer(u), b.numer(u));
            if p.coprime_by_specialization(&q) {
                return Elem::one();
            }
            let c = ring_gcd(&content(&p), &content(&q));
            let g = primitive_gcd(&primitive(&p), &primitive(&q));
            normalize(&(&c * &Elem::from_poly(g)))
        }
    }
}

fn normalize(e: &Elem) -> Elem {
    if e.is_zero() {
        return Elem::zero();
    }
    e * &base_lc(e).inv()
}

/// Gcd of the coefficients.
pub(crate) fn content(p: &Poly) -> Elem {
    let mut acc = Elem::zero();
    for c in p.coeffs() {
        acc = ring_gcd(&acc, c);
        if acc.as_rat().is_some() && !acc.is_zero() {
            return Elem::one();
        }
    }
    acc
}

pub(crate) fn primitive(p: &Poly) -> Poly {
    let c = content(p);
    if c.is_one() || c.is_zero() {
        return p.clone();
    }
    p.map_coeffs(|x| exact_quo(x, &c))
}

/// `lc(b)^(deg a - deg b + 1) a mod b` without divisions.
fn pseudo_rem(a: &Poly, b: &Poly) -> Poly {
    let db = b.deg().unwrap();
    let lb = b.lc();
    let mut rest = a.clone();
    while let Some(dr) = rest.deg() {
        if dr < db {
            break;
        }
        let term = Poly::monomial(a.var(), rest.lc(), dr - db);
        rest = rest.scale(&lb).sub(&term.mul(b));
    }
    rest
}

/// Gcd of primitive ring polynomials, up to a rational factor.
pub(crate) fn primitive_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.coeffs().iter().chain(b.coeffs()).all(|c| c.as_rat().is_some()) {
        return a.gcd(b);
    }
    let (mut a, mut b) = if a.degree() >= b.degree() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    loop {
        match b.deg() {
            None => return a,
            Some(0) => return Poly::one(a.var()),
            Some(_) => {
                let r = pseudo_rem(&a, &b);
                a = b;
                b = primitive(&r);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: u32) -> Elem {
        Elem::var(i)
    }

    #[test]
    fn ring_gcd_of_products() {
        let (x, y, z) = (var(0), var(1), var(2));
        let common = &(&(&x * &y) + &z) + &Elem::int(2);
        let a = &common * &(&(&y * &y) - &x);
        let b = &common * &(&(&z * &x) + &Elem::int(3));
        assert_eq!(ring_gcd(&a, &b), common);
        assert_eq!(exact_quo(&a, &common), &(&y * &y) - &x);
    }

    #[test]
    fn field_gcd_matches_ring_gcd() {
        let (x, y, t) = (var(0), var(1), 2u32);
        let lin = |c: Elem| Poly::linear(t, c);
        let f1 = lin(&y / &(&x + &Elem::one()));
        let f2 = lin(&(&y * &y) / &x);
        let f3 = lin(&x / &(&y + &Elem::int(3)));
        let a = f1.mul(&f2).mul(&f2);
        let b = f1.mul(&f3).mul(&f2);
        let g = primitive_gcd(&primitive(&clear_denominators(&a)), &primitive(&clear_denominators(&b)));
        assert_eq!(g.monic(), f1.mul(&f2));
        assert!(g.coeffs().iter().all(is_integral));
    }
}

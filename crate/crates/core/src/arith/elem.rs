use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Poly;
use crate::error::{Error, Result};

/// Index of a variable. Parameters of the constant field come first, then the
/// tower generators in order.
pub type Var = u32;

/// An exact element of `Q(v0)(v1)...(vk)`, stored recursively.
///
/// `Rat` is a rational number. `Frac` is a reduced fraction `num/den` of
/// polynomials in its top variable whose coefficients live strictly below that
/// variable; `den` is monic and the value genuinely depends on the variable.
/// The representation is canonical, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    Frac(Arc<Frac>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frac {
    var: Var,
    num: Poly,
    den: Poly,
}

impl Frac {
    pub fn var(&self) -> Var {
        self.var
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }
}

impl Elem {
    pub fn zero() -> Elem {
        Elem::Rat(BigRational::zero())
    }

    pub fn one() -> Elem {
        Elem::Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Elem {
        Elem::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rat(n: i64, d: i64) -> Elem {
        Elem::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_bigint(n: BigInt) -> Elem {
        Elem::Rat(BigRational::from_integer(n))
    }

    /// The variable itself as a field element.
    pub fn var(v: Var) -> Elem {
        Elem::Frac(Arc::new(Frac { var: v, num: Poly::new(v, vec![Elem::zero(), Elem::one()]), den: Poly::one(v) }))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Elem::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Elem::Rat(r) if r.is_one())
    }

    pub fn as_rat(&self) -> Option<&BigRational> {
        match self {
            Elem::Rat(r) => Some(r),
            Elem::Frac(_) => None,
        }
    }

    pub fn as_frac(&self) -> Option<&Frac> {
        match self {
            Elem::Rat(_) => None,
            Elem::Frac(f) => Some(f),
        }
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Elem::Rat(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    /// Highest variable the value depends on; `None` for rational numbers.
    pub fn top_var(&self) -> Option<Var> {
        match self {
            Elem::Rat(_) => None,
            Elem::Frac(f) => Some(f.var),
        }
    }

    /// True when the value is free of every variable `>= v`.
    pub fn is_below(&self, v: Var) -> bool {
        self.top_var().is_none_or(|t| t < v)
    }

    /// A polynomial in `v` viewed as a field element.
    pub fn from_poly(p: Poly) -> Elem {
        match p.deg() {
            None => Elem::zero(),
            Some(0) => p.into_coeffs().pop().unwrap(),
            Some(_) => {
                let v = p.var();
                Elem::Frac(Arc::new(Frac { var: v, num: p, den: Poly::one(v) }))
            }
        }
    }

    /// Numerator and denominator as polynomials in `v`. The value must be free of
    /// variables above `v`.
    pub fn parts(&self, v: Var) -> (Poly, Poly) {
        match self {
            Elem::Frac(f) if f.var == v => (f.num.clone(), f.den.clone()),
            _ => {
                debug_assert!(self.is_below(v));
                (Poly::constant(v, self.clone()), Poly::one(v))
            }
        }
    }

    /// Numerator as a polynomial in `v` (the denominator being `parts(v).1`).
    pub fn numer(&self, v: Var) -> Poly {
        self.parts(v).0
    }

    pub fn denom(&self, v: Var) -> Poly {
        self.parts(v).1
    }

    /// True when the value is a polynomial in `v` (denominator free of `v`).
    pub fn is_poly_in(&self, v: Var) -> bool {
        match self {
            Elem::Frac(f) if f.var == v => f.den.is_one(),
            _ => true,
        }
    }

    /// Reduced representation of `num/den`.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Elem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Elem::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap()) };
        let lc = den.lc();
        let (num, den) = if lc.is_one() {
            (num, den)
        } else {
            let inv = lc.inv();
            (num.scale(&inv), den.scale(&inv))
        };
        Ok(Elem::from_reduced(num, den))
    }

    /// Assembles an already reduced fraction (coprime, monic denominator).
    pub(crate) fn from_reduced(num: Poly, den: Poly) -> Elem {
        if den.is_constant() {
            debug_assert!(den.is_one());
            return Elem::from_poly(num);
        }
        let v = num.var();
        Elem::Frac(Arc::new(Frac { var: v, num, den }))
    }

    pub fn inv(&self) -> Elem {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn checked_inv(&self) -> Result<Elem> {
        match self {
            Elem::Rat(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Elem::Rat(r.recip()))
                }
            }
            Elem::Frac(f) => {
                if f.num.is_constant() {
                    let c = f.num.coeffs()[0].inv();
                    return Ok(Elem::from_poly(f.den.scale(&c)));
                }
                let c = f.num.lc().inv();
                Ok(Elem::from_reduced(f.den.scale(&c), f.num.scale(&c)))
            }
        }
    }

    pub fn checked_div(&self, other: &Elem) -> Result<Elem> {
        Ok(self * &other.checked_inv()?)
    }

    pub fn pow(&self, e: i64) -> Elem {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Elem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest bit length of any integer in the representation.
    pub fn max_int_bits(&self) -> u64 {
        match self {
            Elem::Rat(r) => r.numer().bits().max(r.denom().bits()),
            Elem::Frac(f) => f.num.max_int_bits().max(f.den.max_int_bits()),
        }
    }

    /// Sign of the leading rational leaf of the numerator (deterministic, not an order on the field).
    pub fn leading_sign(&self) -> i32 {
        match self {
            Elem::Rat(r) => {
                if r.is_zero() {
                    0
                } else if r.is_negative() {
                    -1
                } else {
                    1
                }
            }
            Elem::Frac(f) => f.num.lc().leading_sign(),
        }
    }

    fn add_impl(&self, other: &Elem) -> Elem {
        match (self, other) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            _ => match self.top_var().cmp(&other.top_var()) {
                Ordering::Greater => add_lower(self.as_frac().unwrap(), other),
                Ordering::Less => add_lower(other.as_frac().unwrap(), self),
                Ordering::Equal => add_same(self.as_frac().unwrap(), other.as_frac().unwrap()),
            },
        }
    }

    fn mul_impl(&self, other: &Elem) -> Elem {
        match (self, other) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            _ => {
                if self.is_zero() || other.is_zero() {
                    return Elem::zero();
                }
                match self.top_var().cmp(&other.top_var()) {
                    Ordering::Greater => mul_lower(self.as_frac().unwrap(), other),
                    Ordering::Less => mul_lower(other.as_frac().unwrap(), self),
                    Ordering::Equal => mul_same(self.as_frac().unwrap(), other.as_frac().unwrap()),
                }
            }
        }
    }

    fn neg_impl(&self) -> Elem {
        match self {
            Elem::Rat(r) => Elem::Rat(-r),
            Elem::Frac(f) => Elem::Frac(Arc::new(Frac { var: f.var, num: f.num.neg(), den: f.den.clone() })),
        }
    }
}

fn add_lower(f: &Frac, c: &Elem) -> Elem {
    if c.is_zero() {
        return Elem::Frac(Arc::new(f.clone()));
    }
    let num = f.num.add(&f.den.scale(c));
    Elem::Frac(Arc::new(Frac { var: f.var, num, den: f.den.clone() }))
}

fn mul_lower(f: &Frac, c: &Elem) -> Elem {
    if c.is_one() {
        return Elem::Frac(Arc::new(f.clone()));
    }
    Elem::Frac(Arc::new(Frac { var: f.var, num: f.num.scale(c), den: f.den.clone() }))
}

fn add_same(a: &Frac, b: &Frac) -> Elem {
    if a.den.is_one() && b.den.is_one() {
        return Elem::from_poly(a.num.add(&b.num));
    }
    if a.den == b.den {
        let num = a.num.add(&b.num);
        return Elem::from_parts(num, a.den.clone()).unwrap();
    }
    let g = a.den.gcd(&b.den);
    if g.is_one() {
        let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
        if num.is_zero() {
            return Elem::zero();
        }
        return Elem::from_reduced(num, a.den.mul(&b.den));
    }
    let ad = a.den.exact_div(&g).unwrap();
    let bd = b.den.exact_div(&g).unwrap();
    let num = a.num.mul(&bd).add(&b.num.mul(&ad));
    if num.is_zero() {
        return Elem::zero();
    }
    let den = ad.mul(&b.den);
    let g2 = num.gcd(&g);
    if g2.is_one() {
        Elem::from_reduced(num, den)
    } else {
        Elem::from_reduced(num.exact_div(&g2).unwrap(), den.exact_div(&g2).unwrap())
    }
}

fn mul_same(a: &Frac, b: &Frac) -> Elem {
    if a.den.is_one() && b.den.is_one() {
        return Elem::from_poly(a.num.mul(&b.num));
    }
    let g1 = a.num.gcd(&b.den);
    let g2 = b.num.gcd(&a.den);
    let (an, bd) = if g1.is_one() {
        (a.num.clone(), b.den.clone())
    } else {
        (a.num.exact_div(&g1).unwrap(), b.den.exact_div(&g1).unwrap())
    };
    let (bn, ad) = if g2.is_one() {
        (b.num.clone(), a.den.clone())
    } else {
        (b.num.exact_div(&g2).unwrap(), a.den.exact_div(&g2).unwrap())
    };
    Elem::from_reduced(an.mul(&bn), ad.mul(&bd))
}

impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Elem::Rat(a), Elem::Rat(b)) => a.cmp(b),
            (Elem::Rat(_), Elem::Frac(_)) => Ordering::Less,
            (Elem::Frac(_), Elem::Rat(_)) => Ordering::Greater,
            (Elem::Frac(a), Elem::Frac(b)) => {
                a.var.cmp(&b.var).then_with(|| a.den.cmp(&b.den)).then_with(|| a.num.cmp(&b.num))
            }
        }
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(r) => write!(f, "{}", r),
            Elem::Frac(fr) => {
                if fr.den.is_one() {
                    write!(f, "{:?}", fr.num)
                } else {
                    write!(f, "({:?})/({:?})", fr.num, fr.den)
                }
            }
        }
    }
}

impl From<i64> for Elem {
    fn from(n: i64) -> Elem {
        Elem::int(n)
    }
}

impl From<BigRational> for Elem {
    fn from(r: BigRational) -> Elem {
        Elem::Rat(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b Elem> for &'a Elem {
            type Output = Elem;
            fn $method(self, rhs: &'b Elem) -> Elem {
                let f: fn(&Elem, &Elem) -> Elem = $body;
                f(self, rhs)
            }
        }
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: Elem) -> Elem {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: &'b Elem) -> Elem {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Elem> for &'a Elem {
            type Output = Elem;
            fn $method(self, rhs: Elem) -> Elem {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b));
forward_binop!(Sub, sub, |a, b| a.add_impl(&b.neg_impl()));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a.mul_impl(&b.inv()));

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_impl()
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_impl()
    }
}

impl std::iter::Sum for Elem {
    fn sum<I: Iterator<Item = Elem>>(iter: I) -> Elem {
        iter.fold(Elem::zero(), |a, b| a + b)
    }
}

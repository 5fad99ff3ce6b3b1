use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use super::{eval_at, ring, Elem, Var};

/// Dense univariate polynomial in `var` over the field of all lower variables.
///
/// Coefficients are stored lowest degree first; the last stored coefficient is
/// never zero, so the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    var: Var,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(var: Var, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.top_var().is_none_or(|v| v < var)));
        Poly { var, coeffs }
    }

    pub fn zero(var: Var) -> Poly {
        Poly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Poly {
        Poly { var, coeffs: vec![Elem::one()] }
    }

    pub fn constant(var: Var, c: Elem) -> Poly {
        Poly::new(var, vec![c])
    }

    /// `c * var^k`
    pub fn monomial(var: Var, c: Elem, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(var);
        }
        let mut coeffs = vec![Elem::zero(); k];
        coeffs.push(c);
        Poly { var, coeffs }
    }

    /// `var + a`
    pub fn linear(var: Var, a: Elem) -> Poly {
        Poly::new(var, vec![a, Elem::one()])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(Elem::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg(0) = -1`.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> Elem {
        self.coeffs.last().cloned().unwrap_or_else(Elem::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Elem::is_one)
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.var, other.var);
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            if !s.is_zero() {
                *c = &*c + s;
            }
        }
        Poly::new(self.var, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.var, other.var);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            };
            coeffs.push(c);
        }
        Poly::new(self.var, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.var);
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { var: self.var, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.var, other.var);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.var);
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        let mut out = vec![Elem::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                out[i + j] = &out[i + j] + &prod;
            }
        }
        Poly::new(self.var, out)
    }

    /// `self * (var + a)`
    pub fn mul_linear(&self, a: &Elem) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let hi = if i > 0 { Some(&self.coeffs[i - 1]) } else { None };
            let lo = if i < n && !a.is_zero() { Some(&self.coeffs[i] * a) } else { None };
            out.push(match (hi, lo) {
                (Some(h), Some(l)) => h + &l,
                (Some(h), None) => h.clone(),
                (None, Some(l)) => l,
                (None, None) => Elem::zero(),
            });
        }
        Poly::new(self.var, out)
    }

    /// `self * var^k`
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Elem::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { var: self.var, coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.var);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Division with remainder over the coefficient field. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.deg().expect("polynomial division by zero");
        let Some(n) = self.deg() else {
            return (Poly::zero(self.var), Poly::zero(self.var));
        };
        if n < dd {
            return (Poly::zero(self.var), self.clone());
        }
        if dd == 0 {
            return (self.scale(&d.coeffs[0].inv()), Poly::zero(self.var));
        }
        let lc = &d.coeffs[dd];
        let inv = if lc.is_one() { None } else { Some(lc.inv()) };
        let mut r = self.coeffs.clone();
        let mut q = vec![Elem::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let top = std::mem::replace(&mut r[i + dd], Elem::zero());
            if top.is_zero() {
                continue;
            }
            let c = match &inv {
                Some(inv) => &top * inv,
                None => top,
            };
            for j in 0..dd {
                if !d.coeffs[j].is_zero() {
                    r[i + j] = &r[i + j] - &(&c * &d.coeffs[j]);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(self.var, q), Poly::new(self.var, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one(self.var);
        }
        if self == other {
            return self.monic();
        }
        if self.coprime_by_specialization(other) {
            return Poly::one(self.var);
        }
        if self.coeffs.iter().chain(&other.coeffs).any(|c| c.as_rat().is_none()) {
            let (a, b) = (ring::clear_denominators(self), ring::clear_denominators(other));
            return ring::primitive_gcd(&ring::primitive(&a), &ring::primitive(&b)).monic();
        }
        let (mut a, mut b) = if self.coeffs.len() >= other.coeffs.len() {
            (self.monic(), other.monic())
        } else {
            (other.monic(), self.monic())
        };
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Sufficient test for `gcd = 1`: substitute rationals for the lower
    /// variables; if both leading coefficients survive and the images are
    /// coprime over `Q`, so are the originals.
    pub(crate) fn coprime_by_specialization(&self, other: &Poly) -> bool {
        if self.coeffs.iter().chain(&other.coeffs).all(|c| c.as_rat().is_some()) {
            return false;
        }
        let n = self.var as usize;
        for attempt in 0..3i64 {
            let vals: Vec<Option<BigRational>> =
                (0..n).map(|i| Some(BigRational::from_integer((17 + 7 * i as i64 + 13 * attempt).into()))).collect();
            let image = |p: &Poly| -> Option<Poly> {
                let coeffs = p.coeffs.iter().map(|c| eval_at(c, &vals).map(Elem::from)).collect::<Option<Vec<_>>>()?;
                let q = Poly::new(p.var, coeffs);
                (q.deg() == p.deg()).then_some(q)
            };
            if let (Some(a), Some(b)) = (image(self), image(other)) {
                return a.gcd(&b).is_constant();
            }
        }
        false
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let var = self.var;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(var), Poly::zero(var));
        let (mut t0, mut t1) = (Poly::zero(var), Poly::one(var));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.var);
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &Elem::int(i as i64)).collect();
        Poly::new(self.var, coeffs)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl FnMut(&Elem) -> Elem) -> Poly {
        Poly::new(self.var, self.coeffs.iter().map(f).collect())
    }

    /// Square-free decomposition (Yun): returns `(a_i, i)` with `self = lc * prod a_i^i`,
    /// every `a_i` monic, square-free and pairwise coprime.
    pub fn square_free(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = df.exact_div(&a).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while !b.is_constant() {
            a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub(crate) fn max_int_bits(&self) -> u64 {
        self.coeffs.iter().map(Elem::max_int_bits).max().unwrap_or(0)
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.var.cmp(&other.var).then(self.coeffs.len().cmp(&other.coeffs.len())).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}[", self.var)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", c)?;
        }
        write!(f, "]")
    }
}

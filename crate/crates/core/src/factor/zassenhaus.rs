//! Factorization over `Q`: modular factorization, Hensel lifting and factor
//! recombination.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Elem, Poly};

type ModPoly = Vec<u64>;
type IntPoly = Vec<BigInt>;

/// Irreducible monic factors with multiplicities of a polynomial whose
/// coefficients are all rational numbers.
pub(crate) fn factor_rational(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (part, mult) in p.square_free() {
        if part.degree() <= 1 {
            out.push((part, mult));
            continue;
        }
        let ints = to_primitive_int(&part);
        for fac in factor_squarefree_int(&ints) {
            out.push((from_int(part.var(), &fac), mult));
        }
    }
    out.sort();
    out
}

fn to_primitive_int(p: &Poly) -> IntPoly {
    let rats: Vec<BigRational> = p.coeffs().iter().map(|c| c.as_rat().expect("rational coefficient").clone()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: IntPoly = rats.iter().map(|r| (r * BigRational::from(lcm.clone())).to_integer()).collect();
    let mut prim = primitive_part(&ints);
    if prim.last().unwrap().is_negative() {
        prim.iter_mut().for_each(|c| *c = -c.clone());
    }
    prim
}

fn from_int(var: crate::arith::Var, f: &[BigInt]) -> Poly {
    let lc = f.last().unwrap().clone();
    Poly::new(var, f.iter().map(|c| Elem::from(BigRational::new(c.clone(), lc.clone()))).collect())
}

fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive_part(f: &[BigInt]) -> IntPoly {
    let c = content(f);
    if c.is_zero() || c.is_one() {
        return f.to_vec();
    }
    f.iter().map(|x| x / &c).collect()
}

fn trim_int(f: &mut IntPoly) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient `f / g` over `Z`, if it exists.
fn int_exact_div(f: &[BigInt], g: &[BigInt]) -> Option<IntPoly> {
    let mut rem = f.to_vec();
    let dg = g.len() - 1;
    if rem.len() < g.len() {
        return None;
    }
    let lc = g.last().unwrap();
    let mut quo = vec![BigInt::zero(); rem.len() - dg];
    for i in (0..quo.len()).rev() {
        let top = &rem[i + dg];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        for (j, c) in g.iter().enumerate() {
            rem[i + j] -= &q * c;
        }
        quo[i] = q;
    }
    trim_int(&mut rem);
    rem.is_empty().then_some(quo)
}

/// Arithmetic in `Z/pZ[x]` for a word-sized prime.
struct Zp {
    p: u64,
}

impl Zp {
    fn reduce_int(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    fn reduce_poly(&self, f: &[BigInt]) -> ModPoly {
        let mut out: ModPoly = f.iter().map(|c| self.reduce_int(c)).collect();
        trim(&mut out);
        out
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn psub(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        let mut out: ModPoly =
            (0..n).map(|i| self.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0))).collect();
        trim(&mut out);
        out
    }

    fn pmul(&self, a: &[u64], b: &[u64]) -> ModPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(&mut out);
        out
    }

    fn pdivrem(&self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly) {
        let mut rem = a.to_vec();
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let db = b.len() - 1;
        let inv = self.inv(*b.last().unwrap());
        let mut quo = vec![0u64; rem.len() - db];
        for i in (0..quo.len()).rev() {
            let q = self.mul(rem[i + db], inv);
            if q == 0 {
                continue;
            }
            for (j, &c) in b.iter().enumerate() {
                rem[i + j] = self.sub(rem[i + j], self.mul(q, c));
            }
            quo[i] = q;
        }
        trim(&mut rem);
        trim(&mut quo);
        (quo, rem)
    }

    fn prem(&self, a: &[u64], b: &[u64]) -> ModPoly {
        self.pdivrem(a, b).1
    }

    fn pmonic(&self, a: &[u64]) -> ModPoly {
        let inv = self.inv(*a.last().unwrap());
        a.iter().map(|&c| self.mul(c, inv)).collect()
    }

    fn pgcd(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.prem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.pmonic(&a)
        }
    }

    /// `(g, s, t)` with `s*a + t*b = g` monic.
    fn pext_gcd(&self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly, ModPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.pdivrem(&r0, &r1);
            let s2 = self.psub(&s0, &self.pmul(&q, &s1));
            let t2 = self.psub(&t0, &self.pmul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().unwrap());
        let sc = |v: &[u64]| -> ModPoly { v.iter().map(|&c| self.mul(c, inv)).collect() };
        (sc(&r0), sc(&s0), sc(&t0))
    }

    fn powmod(&self, base: &[u64], exp: &BigUint, m: &[u64]) -> ModPoly {
        let mut acc = vec![1u64];
        let base = self.prem(base, m);
        for i in (0..exp.bits()).rev() {
            acc = self.prem(&self.pmul(&acc, &acc), m);
            if exp.bit(i) {
                acc = self.prem(&self.pmul(&acc, &base), m);
            }
        }
        acc
    }

    fn derivative(&self, a: &[u64]) -> ModPoly {
        let mut out: ModPoly = a.iter().enumerate().skip(1).map(|(i, &c)| self.mul(c, i as u64 % self.p)).collect();
        trim(&mut out);
        out
    }

    /// Monic irreducible factors of a monic square-free polynomial.
    fn factor(&self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = self.prem(&x, &f);
        let mut d = 0usize;
        let p_big = BigUint::from(self.p);
        while f.len() > 2 * (d + 1) {
            d += 1;
            h = self.powmod(&h, &p_big, &f);
            let g = self.pgcd(&self.psub(&h, &x), &f);
            if g.len() > 1 {
                self.split_equal_degree(&g, d, rng, &mut out);
                f = self.pdivrem(&f, &g).0;
                h = self.prem(&h, &f);
            }
        }
        if f.len() > 1 {
            out.push(f);
        }
        out
    }

    fn split_equal_degree(&self, g: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
        let n = g.len() - 1;
        if n == d {
            out.push(g.to_vec());
            return;
        }
        let exp = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let mut a: ModPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            trim(&mut a);
            if a.len() < 2 {
                continue;
            }
            let b = self.psub(&self.powmod(&a, &exp, g), &[1]);
            let h = self.pgcd(&b, g);
            if h.len() > 1 && h.len() < g.len() {
                let rest = self.pdivrem(g, &h).0;
                self.split_equal_degree(&h, d, rng, out);
                self.split_equal_degree(&rest, d, rng, out);
                return;
            }
        }
    }
}

fn trim(f: &mut ModPoly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Irreducible factors over `Z` of a primitive square-free polynomial with
/// positive leading coefficient.
fn factor_squarefree_int(f: &[BigInt]) -> Vec<IntPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a55);
    let lc = f.last().unwrap().clone();

    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut good = 0;
    let mut candidate = 40_000u64;
    while good < 3 {
        candidate += 1;
        if !is_prime(candidate) {
            continue;
        }
        let zp = Zp { p: candidate };
        if zp.reduce_int(&lc) == 0 {
            continue;
        }
        let fp = zp.reduce_poly(f);
        if zp.pgcd(&fp, &zp.derivative(&fp)).len() != 1 {
            continue;
        }
        good += 1;
        let facs = zp.factor(&zp.pmonic(&fp), &mut rng);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((candidate, facs));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, mut modular) = best.unwrap();
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    modular.sort();
    let zp = Zp { p };

    // coefficient bound for lc-scaled factors
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm_sq.sqrt() + 1) * lc.abs();
    let two_bound = bound * 2;
    let p_big = BigInt::from(p);
    let mut modulus = p_big.clone();
    while modulus <= two_bound {
        modulus *= &p_big;
    }

    let lc_inv = mod_inverse(&lc, &modulus);
    let monic: IntPoly = f.iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();
    let lifted = lift_tree(&zp, &monic, &modular, &modulus);
    recombine(f, &lifted, &modulus)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn lift_tree(zp: &Zp, f: &[BigInt], factors: &[ModPoly], modulus: &BigInt) -> Vec<IntPoly> {
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let g = left.iter().fold(vec![1u64], |acc, u| zp.pmul(&acc, u));
    let h = right.iter().fold(vec![1u64], |acc, u| zp.pmul(&acc, u));
    let (big_g, big_h) = hensel_lift(zp, f, &g, &h, modulus);
    let mut out = lift_tree(zp, &big_g, left, modulus);
    out.extend(lift_tree(zp, &big_h, right, modulus));
    out
}

/// Lifts `f = g*h mod p` (all monic) to `f = G*H mod modulus`.
fn hensel_lift(zp: &Zp, f: &[BigInt], g: &[u64], h: &[u64], modulus: &BigInt) -> (IntPoly, IntPoly) {
    let (one, s, t) = zp.pext_gcd(g, h);
    debug_assert_eq!(one, vec![1]);
    let to_int = |v: &[u64]| -> IntPoly { v.iter().map(|&c| BigInt::from(c)).collect() };
    let mut big_g = to_int(g);
    let mut big_h = to_int(h);
    let p = BigInt::from(zp.p);
    let mut pk = p.clone();
    while &pk < modulus {
        let prod = int_mul(&big_g, &big_h);
        let len = f.len().max(prod.len());
        let err: Vec<BigInt> = (0..len)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b) / &pk
            })
            .collect();
        let e = zp.reduce_poly(&err);
        let dg = zp.prem(&zp.pmul(&t, &e), g);
        let dh = zp.prem(&zp.pmul(&s, &e), h);
        let next = &pk * &p;
        for (i, c) in dg.iter().enumerate() {
            big_g[i] = (&big_g[i] + &pk * BigInt::from(*c)).mod_floor(&next);
        }
        for (i, c) in dh.iter().enumerate() {
            big_h[i] = (&big_h[i] + &pk * BigInt::from(*c)).mod_floor(&next);
        }
        pk = next;
    }
    (big_g, big_h)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn recombine(f: &[BigInt], lifted: &[IntPoly], modulus: &BigInt) -> Vec<IntPoly> {
    let mut f = f.to_vec();
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut result = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = None;
        for subset in Combinations::new(remaining.len(), size) {
            let lc = f.last().unwrap().clone();
            let mut cand = vec![lc];
            for &i in &subset {
                cand = int_mul(&cand, &lifted[remaining[i]]);
                cand.iter_mut().for_each(|c| *c = c.mod_floor(modulus));
            }
            let mut cand: IntPoly = cand.iter().map(|c| symmetric(c, modulus)).collect();
            trim_int(&mut cand);
            let mut cand = primitive_part(&cand);
            if cand.last().unwrap().sign() == Sign::Minus {
                cand.iter_mut().for_each(|c| *c = -c.clone());
            }
            if let Some(q) = int_exact_div(&f, &cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                result.push(cand);
                f = q;
                let taken: Vec<usize> = subset.iter().map(|&i| remaining[i]).collect();
                remaining.retain(|i| !taken.contains(i));
            }
            None => size += 1,
        }
    }
    if f.len() > 1 {
        result.push(f);
    }
    result
}

/// Index subsets of a given size in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Combinations {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

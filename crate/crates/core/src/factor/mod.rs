//! Irreducible factorization, shift equivalence and sigma-factorizations.
//!
//! Polynomials with rational coefficients are factored completely over `Q`,
//! which is also their factorization over any purely transcendental extension.
//! Otherwise a square-free decomposition is refined by exact tests (linear
//! and quadratic pieces, known representatives and their shifts, and
//! `gcd(p, sigma^k(p))`); a piece of degree at least 3 that none of these split
//! is reported as unsupported.

mod image;
mod shift;
mod zassenhaus;

use image::ShiftImages;

pub use shift::{shift_equivalence, sigma_factorization, RepresentativeSet, SigmaFactor, SigmaFactorization};

use num_rational::BigRational;
use num_traits::Signed;

use crate::arith::{Elem, Poly};
use crate::error::{Error, Result};
use crate::tower::TowerSpec;

/// Default half-width of the shift window used by the heuristic searches.
pub const DEFAULT_SE_WINDOW: usize = 20;

/// Monic irreducible factors of `p` with multiplicities, sorted. `hints` are
/// known irreducible polynomials in the same variable whose shifts are tried
/// as divisors.
pub fn factor_irreducible(tower: &TowerSpec, p: &Poly, hints: &[Poly], window: usize) -> Result<Vec<(Poly, usize)>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    if has_rational_coeffs(p) {
        return Ok(zassenhaus::factor_rational(p));
    }
    let mut out = Vec::new();
    for (part, mult) in p.square_free() {
        for piece in split_square_free(tower, part, hints, window)? {
            out.push((piece, mult));
        }
    }
    out.sort();
    Ok(out)
}

fn has_rational_coeffs(p: &Poly) -> bool {
    p.coeffs().iter().all(|c| c.as_rat().is_some())
}

fn split_square_free(tower: &TowerSpec, w: Poly, hints: &[Poly], window: usize) -> Result<Vec<Poly>> {
    let mut work = vec![w.monic()];
    let mut out = Vec::new();
    while let Some(w) = work.pop() {
        let d = w.degree();
        if d <= 1 {
            out.push(w);
            continue;
        }
        if has_rational_coeffs(&w) {
            out.extend(zassenhaus::factor_rational(&w).into_iter().map(|(f, _)| f));
            continue;
        }
        if d == 2 {
            out.extend(split_quadratic(&w));
            continue;
        }
        match find_split(tower, &w, hints, window) {
            Some((a, b)) => {
                work.push(a.monic());
                work.push(b.monic());
            }
            None => {
                return Err(Error::UnsupportedFactorization {
                    level: tower.level_of_var(w.var()),
                    reason: format!("no exact splitting found for a factor of degree {d}"),
                })
            }
        }
    }
    Ok(out)
}

/// Splits a monic square-free quadratic into linear factors when its
/// discriminant is a square, otherwise returns it unchanged.
fn split_quadratic(w: &Poly) -> Vec<Poly> {
    let b = w.coeff(1);
    let c = w.coeff(0);
    let disc = &(&b * &b) - &(&c * &Elem::int(4));
    match sqrt_exact(&disc) {
        Some(s) => {
            let half = Elem::rat(1, 2);
            let r1 = &(&-&b + &s) * &half;
            let r2 = &(&-&b - &s) * &half;
            let mut v = vec![Poly::linear(w.var(), -r1), Poly::linear(w.var(), -r2)];
            v.sort();
            v
        }
        None => vec![w.clone()],
    }
}

fn find_split(tower: &TowerSpec, w: &Poly, hints: &[Poly], window: usize) -> Option<(Poly, Poly)> {
    let v = w.var();
    if w.coeff(0).is_zero() {
        let t = Poly::monomial(v, Elem::one(), 1);
        return Some((t.clone(), w.exact_div(&t).unwrap()));
    }
    let mut images = ShiftImages::new(tower, v);
    let w_image = images.image(w, 0);
    let shifts = || (0..=window as i64).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] });
    for s in hints.iter().filter(|s| s.var() == v && s.degree() >= 1 && s.degree() < w.degree()) {
        for k in shifts() {
            if let (Some(wi), Some(si)) = (&w_image, images.image(s, k)) {
                if !si.divides(wi) {
                    continue;
                }
            }
            let c = tower.sigma_pow_poly(s, k);
            if let Some(q) = w.exact_div(&c) {
                return Some((c, q));
            }
        }
    }
    for k in 1..=window as i64 {
        if let (Some(wi), Some(si)) = (&w_image, images.image(w, k)) {
            if wi.gcd(&si).is_constant() {
                continue;
            }
        }
        let g = w.gcd(&tower.sigma_pow_poly(w, k));
        if g.degree() > 0 && g.degree() < w.degree() {
            let q = w.exact_div(&g).unwrap();
            return Some((g, q));
        }
    }
    None
}

/// Exact square root in the field, if one exists.
pub fn sqrt_exact(e: &Elem) -> Option<Elem> {
    match e {
        Elem::Rat(r) => {
            if r.is_negative() {
                return None;
            }
            let n = r.numer().sqrt();
            let d = r.denom().sqrt();
            (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Elem::from(BigRational::new(n, d)))
        }
        Elem::Frac(f) => {
            // sqrt(n/d) = sqrt(n*d)/d
            let prod = f.num().mul(f.den());
            let lc = prod.lc();
            let root_lc = sqrt_exact(&lc)?;
            let root = sqrt_monic_poly(&prod.scale(&lc.inv()))?;
            Elem::from_parts(root.scale(&root_lc), f.den().clone()).ok()
        }
    }
}

fn sqrt_monic_poly(p: &Poly) -> Option<Poly> {
    let d = p.deg()?;
    if d % 2 == 1 {
        return None;
    }
    let m = d / 2;
    let mut s = vec![Elem::zero(); m + 1];
    s[m] = Elem::one();
    for j in 1..=m {
        let idx = 2 * m - j;
        let mut acc = p.coeff(idx);
        for a in (m - j + 1)..m {
            let b = idx - a;
            if b > m - j && b < m {
                acc = &acc - &(&s[a] * &s[b]);
            }
        }
        s[m - j] = &acc * &Elem::rat(1, 2);
    }
    let root = Poly::new(p.var(), s);
    (root.mul(&root) == *p).then_some(root)
}

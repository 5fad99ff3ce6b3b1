use std::collections::BTreeMap;

use crate::arith::{Elem, Poly};
use crate::error::Result;
use crate::tower::TowerSpec;

use super::{factor_irreducible, ShiftImages};

/// Finds `k` with `sigma^k(p) = q` for monic polynomials in the same generator.
///
/// When the generator has a constant difference and both polynomials have
/// constant coefficients the shift is read off the subleading coefficients;
/// otherwise shifts with `|k| <= window` are tried, each first on rational
/// images.
pub fn shift_equivalence(tower: &TowerSpec, p: &Poly, q: &Poly, window: usize) -> Option<i64> {
    if p.var() != q.var() || p.degree() != q.degree() || p.degree() < 1 {
        return None;
    }
    if p == q {
        return Some(0);
    }
    let level = tower.level_of_var(p.var());
    if level == 0 {
        return None;
    }
    let delta = tower.generator_delta(level);
    let constant_coeffs = |f: &Poly| f.coeffs().iter().all(|c| tower.is_constant(c));
    if tower.is_constant(delta) && constant_coeffs(p) && constant_coeffs(q) {
        // sigma^k(t^d + a t^(d-1) + ...) = t^d + (a + d k delta) t^(d-1) + ...
        let d = p.degree();
        let sub = p.degree() as usize - 1;
        let k = &(&q.coeff(sub) - &p.coeff(sub)) / &(delta * &Elem::int(d));
        let k = k.as_integer()?;
        let k: i64 = k.try_into().ok()?;
        return (tower.sigma_pow_poly(p, k) == *q).then_some(k);
    }
    let mut images = ShiftImages::new(tower, p.var());
    let target = images.image(q, 0);
    for k in (1..=window as i64).flat_map(|k| [k, -k]) {
        if let (Some(qi), Some(pi)) = (&target, images.image(p, k)) {
            if qi != &pi {
                continue;
            }
        }
        if tower.sigma_pow_poly(p, k) == *q {
            return Some(k);
        }
    }
    None
}

/// Pairwise shift-inequivalent monic irreducible polynomials of one level.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepresentativeSet {
    members: Vec<Poly>,
}

impl RepresentativeSet {
    pub fn new() -> RepresentativeSet {
        RepresentativeSet::default()
    }

    pub fn members(&self) -> &[Poly] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Index and shift of a member equivalent to `q`.
    pub fn find(&self, tower: &TowerSpec, q: &Poly, window: usize) -> Option<(usize, i64)> {
        self.members.iter().enumerate().find_map(|(i, p)| shift_equivalence(tower, p, q, window).map(|k| (i, k)))
    }

    /// Index and shift of the member equivalent to `q`, appending `q` when
    /// there is none.
    pub fn locate(&mut self, tower: &TowerSpec, q: &Poly, window: usize) -> (usize, i64) {
        if let Some(found) = self.find(tower, q, window) {
            return found;
        }
        self.members.push(q.clone());
        (self.members.len() - 1, 0)
    }
}

/// Powers of shifts of a single representative: `prod sigma^l(rep)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaFactor {
    pub rep: Poly,
    /// `shift -> multiplicity`
    pub powers: BTreeMap<i64, usize>,
}

/// Monic denominator written as a product of shifted representatives.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SigmaFactorization {
    pub factors: Vec<SigmaFactor>,
}

impl SigmaFactorization {
    pub(crate) fn push(&mut self, rep: &Poly, shift: i64, mult: usize) {
        match self.factors.iter_mut().find(|f| f.rep == *rep) {
            Some(f) => *f.powers.entry(shift).or_insert(0) += mult,
            None => self.factors.push(SigmaFactor { rep: rep.clone(), powers: BTreeMap::from([(shift, mult)]) }),
        }
    }

    /// `(rep, shift, multiplicity)` triples in order.
    pub fn terms(&self) -> impl Iterator<Item = (&Poly, i64, usize)> {
        self.factors.iter().flat_map(|f| f.powers.iter().map(move |(&l, &m)| (&f.rep, l, m)))
    }

    /// The product as a polynomial.
    pub fn expand(&self, tower: &TowerSpec) -> Option<Poly> {
        let mut acc: Option<Poly> = None;
        for (rep, l, m) in self.terms() {
            let f = tower.sigma_pow_poly(rep, l).pow(m as u32);
            acc = Some(match acc {
                Some(a) => a.mul(&f),
                None => f,
            });
        }
        acc
    }
}

/// Sigma-factorization of `den` against `reps`, extending `reps` with new
/// representatives in factor order.
pub fn sigma_factorization(
    tower: &TowerSpec,
    den: &Poly,
    reps: &mut RepresentativeSet,
    window: usize,
) -> Result<SigmaFactorization> {
    let factors = factor_irreducible(tower, den, reps.members(), window)?;
    let mut out = SigmaFactorization::default();
    for (q, m) in factors {
        let (idx, shift) = reps.locate(tower, &q, window);
        out.push(&reps.members()[idx].clone(), shift, m);
    }
    Ok(out)
}

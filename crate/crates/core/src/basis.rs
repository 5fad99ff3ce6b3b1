//! The canonical basis of the tower over the constant field and the coefficient
//! functionals `theta*`.
//!
//! At level `i` the basis of `F_i` over `F_{i-1}` consists of the powers `t^k`
//! and the fractions `t^k/q^m` with `q` monic irreducible and `k < deg q`.
//! Products of one such element per level form a basis of the whole tower over
//! the constants.

use std::collections::BTreeMap;

use crate::arith::{poly_proper_split, Elem, Poly};
use crate::error::{Error, Result};
use crate::tower::TowerSpec;

/// Factorization callback: monic irreducible factors with multiplicities,
/// sorted.
pub type Factorer<'a> = dyn FnMut(&Poly) -> Result<Vec<(Poly, usize)>> + 'a;

/// One level's factor of a basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisComponent {
    /// `t^k`
    Monomial(usize),
    /// `t^k / q^m`
    Fraction { k: usize, q: Poly, m: usize },
}

impl BasisComponent {
    fn is_one(&self) -> bool {
        matches!(self, BasisComponent::Monomial(0))
    }

    /// The component as a field element, `t` being the variable of `level`.
    pub fn to_elem(&self, tower: &TowerSpec, level: usize) -> Elem {
        let t = tower.generator(level);
        match self {
            BasisComponent::Monomial(k) => t.pow(*k as i64),
            BasisComponent::Fraction { k, q, m } => &t.pow(*k as i64) / &Elem::from_poly(q.clone()).pow(*m as i64),
        }
    }
}

/// A basis element of the tower over the constants: one component per level,
/// levels absent from the map contributing `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaElement {
    components: BTreeMap<usize, BasisComponent>,
}

impl ThetaElement {
    pub fn one() -> ThetaElement {
        ThetaElement::default()
    }

    pub fn single(level: usize, comp: BasisComponent) -> ThetaElement {
        let mut out = ThetaElement::one();
        out.set(level, comp);
        out
    }

    pub fn components(&self) -> &BTreeMap<usize, BasisComponent> {
        &self.components
    }

    pub fn component(&self, level: usize) -> BasisComponent {
        self.components.get(&level).cloned().unwrap_or(BasisComponent::Monomial(0))
    }

    pub fn set(&mut self, level: usize, comp: BasisComponent) {
        if comp.is_one() {
            self.components.remove(&level);
        } else {
            self.components.insert(level, comp);
        }
    }

    /// Highest level with a nontrivial component.
    pub fn indicator(&self) -> usize {
        self.components.keys().next_back().copied().unwrap_or(0)
    }

    pub fn to_elem(&self, tower: &TowerSpec) -> Elem {
        self.components.iter().fold(Elem::one(), |acc, (&level, c)| &acc * &c.to_elem(tower, level))
    }

    /// `theta*(b)`: the constant coefficient of this basis element in `b`.
    pub fn project(&self, tower: &TowerSpec, b: &Elem) -> Elem {
        let top = tower.indicator(b).max(self.indicator());
        let mut cur = b.clone();
        for level in (1..=top).rev() {
            if cur.is_zero() {
                break;
            }
            cur = component_coefficient(tower, &cur, level, &self.component(level));
        }
        cur
    }
}

/// `theta*(b)` for a full basis element.
pub fn coefficient(tower: &TowerSpec, b: &Elem, theta: &ThetaElement) -> Elem {
    theta.project(tower, b)
}

/// The single-level functional: coefficient of `comp` when `b` in `F_level` is
/// written over `F_{level-1}`.
pub fn component_coefficient(tower: &TowerSpec, b: &Elem, level: usize, comp: &BasisComponent) -> Elem {
    let v = tower.var_of_level(level);
    let (p, r) = poly_proper_split(b, v);
    match comp {
        BasisComponent::Monomial(k) => p.coeff(*k),
        BasisComponent::Fraction { k, q, m } => {
            if r.is_zero() {
                return Elem::zero();
            }
            let (num, den) = r.parts(v);
            qadic_coefficient(&num, &den, q, *m).coeff(*k)
        }
    }
}

/// Coefficient of `q^{-m}` in the `q`-adic expansion of the proper fraction
/// `num/den`, a polynomial of degree below `deg q`.
pub fn qadic_coefficient(num: &Poly, den: &Poly, q: &Poly, m: usize) -> Poly {
    let v = den.var();
    let mut e = 0;
    let mut rest = den.clone();
    while let Some(next) = rest.exact_div(q) {
        rest = next;
        e += 1;
    }
    if m == 0 || m > e {
        return Poly::zero(v);
    }
    let qe = q.pow(e as u32);
    // num/den = A/q^e + B/rest with A = num * rest^{-1} mod q^e
    let a = if rest.is_constant() {
        num.scale(&rest.lc().inv()).rem(&qe)
    } else {
        let (g, s, _) = rest.ext_gcd(&qe);
        debug_assert!(g.is_one());
        num.mul(&s).rem(&qe)
    };
    let mut cur = a;
    for _ in 0..(e - m) {
        cur = cur.div_rem(q).0;
    }
    cur.rem(q)
}

/// A basis component at `level` with nonzero coefficient in `a`, together with
/// that coefficient (an element of `F_{level-1}`). If `a` involves the
/// generator of `level`, so does the component.
pub fn basis_element_for_summation(
    tower: &TowerSpec,
    a: &Elem,
    level: usize,
    factor: &mut Factorer<'_>,
) -> Result<(BasisComponent, Elem)> {
    if a.is_zero() {
        return Err(Error::InvalidInput("no basis element for zero".into()));
    }
    if level == 0 {
        return Ok((BasisComponent::Monomial(0), a.clone()));
    }
    let v = tower.var_of_level(level);
    let (p, r) = poly_proper_split(a, v);
    if let Some(d) = p.deg().filter(|&d| d > 0) {
        return Ok((BasisComponent::Monomial(d), p.lc()));
    }
    if !r.is_zero() {
        let (num, den) = r.parts(v);
        let factors = factor(&den)?;
        let (q, m) = factors.into_iter().next().expect("proper part has a nonconstant denominator");
        let h = qadic_coefficient(&num, &den, &q, m);
        let k = h.deg().expect("leading q-adic digit is nonzero");
        return Ok((BasisComponent::Fraction { k, q, m }, h.lc()));
    }
    Ok((BasisComponent::Monomial(0), p.coeff(0)))
}

/// A basis element `theta` of the whole tower with `theta*(f) = c` a nonzero
/// constant and `indicator(theta) = indicator(f)`.
pub fn effective_xi_element(tower: &TowerSpec, f: &Elem, factor: &mut Factorer<'_>) -> Result<(ThetaElement, Elem)> {
    if f.is_zero() {
        return Err(Error::InvalidInput("no basis element for zero".into()));
    }
    let mut theta = ThetaElement::one();
    let mut cur = f.clone();
    loop {
        let level = tower.indicator(&cur);
        if level == 0 {
            return Ok((theta, cur));
        }
        let (comp, c) = basis_element_for_summation(tower, &cur, level, factor)?;
        theta.set(level, comp);
        cur = c;
    }
}

/// Expansion of `f` over the basis: nonzero constant coefficients by basis
/// element.
pub fn xi_expand(tower: &TowerSpec, f: &Elem, factor: &mut Factorer<'_>) -> Result<BTreeMap<ThetaElement, Elem>> {
    let mut out = BTreeMap::new();
    expand_into(tower, f, tower.indicator(f), ThetaElement::one(), factor, &mut out)?;
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn expand_into(
    tower: &TowerSpec,
    f: &Elem,
    level: usize,
    prefix: ThetaElement,
    factor: &mut Factorer<'_>,
    out: &mut BTreeMap<ThetaElement, Elem>,
) -> Result<()> {
    if f.is_zero() {
        return Ok(());
    }
    let level = level.min(tower.indicator(f));
    if level == 0 {
        let entry = out.entry(prefix).or_insert_with(Elem::zero);
        *entry = &*entry + f;
        return Ok(());
    }
    let v = tower.var_of_level(level);
    let (p, r) = poly_proper_split(f, v);
    for (k, c) in p.coeffs().iter().enumerate() {
        let mut theta = prefix.clone();
        theta.set(level, BasisComponent::Monomial(k));
        expand_into(tower, c, level - 1, theta, factor, out)?;
    }
    if !r.is_zero() {
        let (num, den) = r.parts(v);
        for (q, e) in factor(&den)? {
            for m in 1..=e {
                let h = qadic_coefficient(&num, &den, &q, m);
                for (k, c) in h.coeffs().iter().enumerate() {
                    let mut theta = prefix.clone();
                    theta.set(level, BasisComponent::Fraction { k, q: q.clone(), m });
                    expand_into(tower, c, level - 1, theta, factor, out)?;
                }
            }
        }
    }
    Ok(())
}

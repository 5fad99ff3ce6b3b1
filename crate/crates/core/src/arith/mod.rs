//! Exact arithmetic: rational numbers, dense univariate polynomials and reduced
//! rational functions, nested recursively to model `Q(params)(t1)...(tn)`.

mod elem;
mod poly;
mod ring;

pub use elem::{Elem, Frac, Var};
pub use poly::Poly;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Reduced representation of `num/den`: coprime, monic denominator.
pub fn normalize(num: Poly, den: Poly) -> Result<Elem> {
    Elem::from_parts(num, den)
}

/// Splits `f` into its polynomial part and its proper part with respect to `v`.
pub fn poly_proper_split(f: &Elem, v: Var) -> (Poly, Elem) {
    let (num, den) = f.parts(v);
    if den.is_one() {
        return (num, Elem::zero());
    }
    let (q, r) = num.div_rem(&den);
    let proper = Elem::from_parts(r, den).expect("nonzero denominator");
    (q, proper)
}

/// Partial fractions of a proper `num/den` over pairwise coprime factors whose
/// product is `den`: returns numerators `v_j` with `deg v_j < deg factor_j` and
/// `num/den = sum v_j / factor_j`.
pub fn partial_fractions(num: &Poly, den: &Poly, factors: &[Poly]) -> Result<Vec<Poly>> {
    let v = den.var();
    let product = factors.iter().fold(Poly::one(v), |acc, f| acc.mul(f));
    if product.monic() != den.monic() {
        return Err(Error::InconsistentFactorization);
    }
    // num/den with den = lc * product
    let scale = den.lc().inv();
    let num = num.scale(&scale);
    let mut out = Vec::with_capacity(factors.len());
    for (j, fj) in factors.iter().enumerate() {
        if factors.len() == 1 {
            out.push(num.rem(fj));
            break;
        }
        let cofactor = factors.iter().enumerate().filter(|(i, _)| *i != j).fold(Poly::one(v), |acc, (_, f)| acc.mul(f));
        let (g, s, _) = cofactor.ext_gcd(fj);
        if !g.is_one() {
            return Err(Error::InconsistentFactorization);
        }
        // s * cofactor == 1 mod fj
        out.push(num.mul(&s).rem(fj));
    }
    Ok(out)
}

/// Value of `f` at a point, `None` at a pole. `vals` is indexed by variable.
pub fn eval_at(f: &Elem, vals: &[Option<BigRational>]) -> Option<BigRational> {
    match f {
        Elem::Rat(r) => Some(r.clone()),
        Elem::Frac(fr) => {
            let at = vals.get(fr.var() as usize)?.as_ref()?;
            let num = eval_poly(fr.num(), at, vals)?;
            let den = eval_poly(fr.den(), at, vals)?;
            if den.is_zero() {
                None
            } else {
                Some(num / den)
            }
        }
    }
}

fn eval_poly(p: &Poly, at: &BigRational, vals: &[Option<BigRational>]) -> Option<BigRational> {
    let mut acc = BigRational::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * at + eval_at(c, vals)?;
    }
    Some(acc)
}

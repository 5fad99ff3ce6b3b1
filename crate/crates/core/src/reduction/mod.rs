//! Complete reduction: splits any `f` of the tower as `f = Delta(g) + r` with `r`
//! in a fixed complement of the summable elements, so that `f` is summable iff
//! `r = 0`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{partial_fractions, poly_proper_split, Elem, Poly};
use crate::basis::{effective_xi_element, ThetaElement};
use crate::error::{Error, Result};
use crate::factor::{factor_irreducible, shift_equivalence, RepresentativeSet, SigmaFactorization, DEFAULT_SE_WINDOW};
use crate::tower::TowerSpec;

/// `f = Delta(g) + r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPair {
    pub g: Elem,
    pub r: Elem,
}

impl SigmaPair {
    pub fn zero() -> SigmaPair {
        SigmaPair { g: Elem::zero(), r: Elem::zero() }
    }

    pub fn is_summable(&self) -> bool {
        self.r.is_zero()
    }

    /// Checks `Delta(g) + r = f` symbolically.
    pub fn verify(&self, tower: &TowerSpec, f: &Elem) -> bool {
        &tower.delta(&self.g) + &self.r == *f
    }
}

/// `Delta(t) = Delta(g) + v` with `v` the remainder of `Delta(t)` one level below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstPair {
    pub g: Elem,
    pub v: Elem,
}

/// A basis element `theta` with `theta*(v) = c != 0` for the first pair's `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondPair {
    pub theta: ThetaElement,
    pub c: Elem,
}

/// `b = Delta(w)` with `deg b = i` and leading coefficient `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonEntry {
    pub w: Poly,
    pub b: Poly,
}

/// Whether polynomial inputs in polynomial towers skip the proper-part
/// machinery.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FastPathMode {
    #[default]
    Auto,
    On,
    Off,
}

impl FromStr for FastPathMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<FastPathMode> {
        match s {
            "auto" => Ok(FastPathMode::Auto),
            "on" => Ok(FastPathMode::On),
            "off" => Ok(FastPathMode::Off),
            _ => Err(Error::InvalidInput(format!("fast path mode must be auto, on or off, not `{s}`"))),
        }
    }
}

impl fmt::Display for FastPathMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FastPathMode::Auto => "auto",
            FastPathMode::On => "on",
            FastPathMode::Off => "off",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ReductionOptions {
    pub se_window: usize,
    pub fast_path: FastPathMode,
    /// Largest permitted bit length of any integer in a result.
    pub max_int_bits: Option<u64>,
}

impl Default for ReductionOptions {
    fn default() -> ReductionOptions {
        ReductionOptions { se_window: DEFAULT_SE_WINDOW, fast_path: FastPathMode::Auto, max_int_bits: None }
    }
}

#[derive(Clone, Debug, Default)]
struct LevelState {
    reps: RepresentativeSet,
    first: Option<FirstPair>,
    second: Option<SecondPair>,
    echelon: Vec<EchelonEntry>,
    /// `(t + Delta(t))^k`
    shift_powers: Vec<Poly>,
    memo: HashMap<Elem, SigmaPair>,
}

/// Per-session state of the reduction engine: representative sets, fixed first
/// and second pairs, and cached echelon bases for every level.
#[derive(Clone, Debug)]
pub struct ReductionContext {
    tower: TowerSpec,
    options: ReductionOptions,
    levels: Vec<LevelState>,
    factor_cache: RefCell<HashMap<Poly, Vec<(Poly, usize)>>>,
}

impl ReductionContext {
    pub fn new(tower: TowerSpec, options: ReductionOptions) -> ReductionContext {
        let levels = vec![LevelState::default(); tower.height()];
        ReductionContext { tower, options, levels, factor_cache: RefCell::new(HashMap::new()) }
    }

    pub fn tower(&self) -> &TowerSpec {
        &self.tower
    }

    pub fn options(&self) -> &ReductionOptions {
        &self.options
    }

    pub fn height(&self) -> usize {
        self.tower.height()
    }

    /// Appends a generator to the tower, returning its level.
    pub fn push_generator(&mut self, name: impl Into<String>, delta: Elem) -> Result<usize> {
        let level = self.tower.push_generator(name, delta)?;
        self.levels.push(LevelState::default());
        Ok(level)
    }

    pub fn representatives(&self, level: usize) -> &RepresentativeSet {
        &self.levels[level - 1].reps
    }

    /// Adds a monic irreducible polynomial in the generator of `level` to the
    /// representative set, unless an equivalent member is already present.
    pub fn seed_representative(&mut self, level: usize, p: &Poly) -> Result<()> {
        let v = self.tower.var_of_level(level);
        if p.var() != v || p.degree() < 1 || !p.is_monic() {
            return Err(Error::InvalidInput(format!(
                "seed representative must be a monic polynomial of positive degree in `{}`",
                self.tower.generator_name(level)
            )));
        }
        let factors = self.factor(p)?;
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::InvalidInput("seed representative is not irreducible".into()));
        }
        let window = self.options.se_window;
        self.levels[level - 1].reps.locate(&self.tower, p, window);
        Ok(())
    }

    /// Irreducible factorization using the representatives of the polynomial's
    /// level as hints.
    pub fn factor(&self, p: &Poly) -> Result<Vec<(Poly, usize)>> {
        if let Some(hit) = self.factor_cache.borrow().get(p) {
            return Ok(hit.clone());
        }
        let level = self.tower.level_of_var(p.var());
        let hints = if level == 0 { &[][..] } else { self.levels[level - 1].reps.members() };
        let out = factor_irreducible(&self.tower, p, hints, self.options.se_window)?;
        self.factor_cache.borrow_mut().insert(p.clone(), out.clone());
        Ok(out)
    }

    /// Sigma-factorization of a monic denominator in the generator of `level`,
    /// growing the representative set as needed.
    pub fn sigma_factorization(&mut self, den: &Poly, level: usize) -> Result<SigmaFactorization> {
        let factors = self.factor(den)?;
        let window = self.options.se_window;
        let reps = &mut self.levels[level - 1].reps;
        let mut out = SigmaFactorization::default();
        for (q, m) in factors {
            let (idx, shift) = reps.locate(&self.tower, &q, window);
            out.push(&reps.members()[idx].clone(), shift, m);
        }
        Ok(out)
    }

    pub fn first_pair(&mut self, level: usize) -> Result<FirstPair> {
        if let Some(fp) = &self.levels[level - 1].first {
            return Ok(fp.clone());
        }
        let delta = self.tower.generator_delta(level).clone();
        let pair = self.complete_reduction(&delta, level - 1)?;
        if pair.r.is_zero() {
            return Err(Error::NotSigmaMonomial { name: self.tower.generator_name(level).to_string() });
        }
        let fp = FirstPair { g: pair.g, v: pair.r };
        self.levels[level - 1].first = Some(fp.clone());
        Ok(fp)
    }

    pub fn second_pair(&mut self, level: usize) -> Result<SecondPair> {
        if let Some(sp) = &self.levels[level - 1].second {
            return Ok(sp.clone());
        }
        let fp = self.first_pair(level)?;
        let (theta, c) = {
            let this = &*self;
            let mut fac = |p: &Poly| this.factor(p);
            effective_xi_element(&this.tower, &fp.v, &mut fac)?
        };
        let sp = SecondPair { theta, c };
        self.levels[level - 1].second = Some(sp.clone());
        Ok(sp)
    }

    fn shift_power(&mut self, level: usize, k: usize) -> Poly {
        let v = self.tower.var_of_level(level);
        let a = self.tower.generator_delta(level).clone();
        let powers = &mut self.levels[level - 1].shift_powers;
        if powers.is_empty() {
            powers.push(Poly::one(v));
        }
        while powers.len() <= k {
            let next = powers.last().unwrap().mul_linear(&a);
            powers.push(next);
        }
        powers[k].clone()
    }

    /// `Delta(c t^d)` for `c` one level below.
    fn delta_monomial(&mut self, level: usize, c: &Elem, d: usize) -> Poly {
        let v = self.tower.var_of_level(level);
        let shifted = self.shift_power(level, d).scale(&self.tower.sigma(c));
        shifted.sub(&Poly::monomial(v, c.clone(), d))
    }

    /// Reduction of a proper fraction in the generator of `level`: returns
    /// `(g, h)` with `f = Delta(g) + h` and the denominator of `h` a product of
    /// unshifted representatives.
    pub fn reduce_proper(&mut self, f: &Elem, level: usize) -> Result<(Elem, Elem)> {
        if f.is_zero() {
            return Ok((Elem::zero(), Elem::zero()));
        }
        let v = self.tower.var_of_level(level);
        let (num, den) = f.parts(v);
        if num.degree() >= den.degree() {
            return Err(Error::InvalidInput("reduce_proper needs a proper fraction".into()));
        }
        let sf = self.sigma_factorization(&den, level)?;
        let mut terms = Vec::new();
        let mut blocks = Vec::new();
        for (rep, shift, mult) in sf.terms() {
            let p_pow = rep.pow(mult as u32);
            blocks.push(self.tower.sigma_pow_poly(&p_pow, shift));
            terms.push((p_pow, shift));
        }
        let nums = partial_fractions(&num, &den, &blocks)?;
        let tower = &self.tower;
        let mut g = Elem::zero();
        let mut h = Elem::zero();
        let frac = |a: &Poly, b: &Poly| Elem::from_parts(a.clone(), b.clone());
        for ((numer, (p_pow, shift)), block) in nums.into_iter().zip(terms).zip(blocks) {
            if numer.is_zero() {
                continue;
            }
            let mut cur_v = numer;
            let mut cur_p = block;
            if shift > 0 {
                // v/sigma^l(P) = Delta(sum_{j=1..l} sigma^{-j}(v)/sigma^{l-j}(P)) + sigma^{-l}(v)/P
                for _ in 0..shift {
                    cur_v = tower.sigma_inv_poly(&cur_v);
                    cur_p = tower.sigma_inv_poly(&cur_p);
                    g = &g + &frac(&cur_v, &cur_p)?;
                }
            } else if shift < 0 {
                // v/sigma^l(P) = Delta(-sum_{j=0..-l-1} sigma^j(v)/sigma^{l+j}(P)) + sigma^{-l}(v)/P
                for _ in 0..(-shift) {
                    g = &g - &frac(&cur_v, &cur_p)?;
                    cur_v = tower.sigma_poly(&cur_v);
                    cur_p = tower.sigma_poly(&cur_p);
                }
            }
            debug_assert_eq!(cur_p, p_pow);
            h = &h + &frac(&cur_v, &p_pow)?;
        }
        Ok((g, h))
    }

    /// `p = Delta(q) + r` with every coefficient of `r` a remainder one level
    /// below.
    pub fn auxiliary_reduction(&mut self, p: &Poly, level: usize) -> Result<(Poly, Poly)> {
        let v = self.tower.var_of_level(level);
        let mut rest = p.clone();
        let mut q = vec![Elem::zero(); p.coeffs().len()];
        let mut r = vec![Elem::zero(); p.coeffs().len()];
        while let Some(d) = rest.deg() {
            let lc = rest.lc();
            let pair = self.complete_reduction(&lc, level - 1)?;
            let mut update = self.delta_monomial(level, &pair.g, d).into_coeffs();
            update.resize(d + 1, Elem::zero());
            update[d] = &update[d] + &pair.r;
            // the top coefficient cancels exactly: lc = Delta(g) + r
            let lower: Vec<Elem> = (0..d).map(|j| &rest.coeff(j) - &update[j]).collect();
            rest = Poly::new(v, lower);
            q[d] = pair.g;
            r[d] = pair.r;
        }
        Ok((Poly::new(v, q), Poly::new(v, r)))
    }

    /// The first `k + 1` entries of the echelon basis of the summable part of
    /// the auxiliary subspace, extended lazily and cached.
    pub fn echelon_basis(&mut self, level: usize, k: usize) -> Result<Vec<EchelonEntry>> {
        self.ensure_echelon(level, k)?;
        Ok(self.levels[level - 1].echelon[..=k].to_vec())
    }

    fn ensure_echelon(&mut self, level: usize, k: usize) -> Result<()> {
        if self.levels[level - 1].echelon.len() > k {
            return Ok(());
        }
        let fp = self.first_pair(level)?;
        let v = self.tower.var_of_level(level);
        if self.levels[level - 1].echelon.is_empty() {
            let w0 = Poly::new(v, vec![-&fp.g, Elem::one()]);
            let b0 = Poly::constant(v, fp.v.clone());
            self.levels[level - 1].echelon.push(EchelonEntry { w: w0, b: b0 });
        }
        let sigma_g = self.tower.sigma(&fp.g);
        while self.levels[level - 1].echelon.len() <= k {
            let i = self.levels[level - 1].echelon.len();
            let inv = Elem::rat(1, i as i64 + 1);
            // a = t^{i+1}/(i+1) - g t^i
            let a = Poly::monomial(v, inv.clone(), i + 1).sub(&Poly::monomial(v, fp.g.clone(), i));
            // Delta(a) - v t^i
            let up = self.shift_power(level, i + 1).sub(&Poly::monomial(v, Elem::one(), i + 1)).scale(&inv);
            let down = self.shift_power(level, i).scale(&sigma_g).sub(&Poly::monomial(v, fp.g.clone(), i));
            let tilde = up.sub(&down).sub(&Poly::monomial(v, fp.v.clone(), i));
            let (q, r) = self.auxiliary_reduction(&tilde, level)?;
            let w = a.sub(&q);
            let b = Poly::monomial(v, fp.v.clone(), i).add(&r);
            self.levels[level - 1].echelon.push(EchelonEntry { w, b });
        }
        Ok(())
    }

    /// `p = Delta(q) + v` with `v` in the polynomial complement.
    pub fn reduce_polynomial(&mut self, p: &Poly, level: usize) -> Result<(Poly, Poly)> {
        let (mut q, r) = self.auxiliary_reduction(p, level)?;
        let Some(d) = r.deg() else {
            return Ok((q, r));
        };
        let sp = self.second_pair(level)?;
        self.ensure_echelon(level, d)?;
        let mut rem = r;
        for i in (0..=d).rev() {
            let a = rem.coeff(i);
            if a.is_zero() {
                continue;
            }
            let proj = sp.theta.project(&self.tower, &a);
            if proj.is_zero() {
                continue;
            }
            let s = &proj / &sp.c;
            let entry = &self.levels[level - 1].echelon[i];
            q = q.add(&entry.w.scale(&s));
            rem = rem.sub(&entry.b.scale(&s));
        }
        Ok((q, rem))
    }

    /// Sigma-pair of `f` in `F_level` (which must contain `f`).
    pub fn complete_reduction(&mut self, f: &Elem, level: usize) -> Result<SigmaPair> {
        if f.is_zero() {
            return Ok(SigmaPair::zero());
        }
        if level == 0 {
            return Ok(SigmaPair { g: Elem::zero(), r: f.clone() });
        }
        if self.tower.indicator(f) > level {
            return Err(Error::InvalidInput(format!("element does not lie in level {level}")));
        }
        if let Some(hit) = self.levels[level - 1].memo.get(f) {
            return Ok(hit.clone());
        }
        let v = self.tower.var_of_level(level);
        let pair = if self.use_ring_path(f, level)? {
            let (q, w) = self.reduce_polynomial(&f.numer(v), level)?;
            SigmaPair { g: Elem::from_poly(q), r: Elem::from_poly(w) }
        } else {
            let (poly, proper) = poly_proper_split(f, v);
            let (g1, h) = self.reduce_proper(&proper, level)?;
            let (q, w) = self.reduce_polynomial(&poly, level)?;
            SigmaPair { g: &g1 + &Elem::from_poly(q), r: &h + &Elem::from_poly(w) }
        };
        self.check_size(&pair)?;
        self.levels[level - 1].memo.insert(f.clone(), pair.clone());
        Ok(pair)
    }

    /// Sigma-pair of `f` in the full tower.
    pub fn reduce(&mut self, f: &Elem) -> Result<SigmaPair> {
        self.complete_reduction(f, self.height())
    }

    fn check_size(&self, pair: &SigmaPair) -> Result<()> {
        if let Some(limit) = self.options.max_int_bits {
            let bits = pair.g.max_int_bits().max(pair.r.max_int_bits());
            if bits > limit {
                return Err(Error::SizeLimit { bits, limit });
            }
        }
        Ok(())
    }

    /// True when every difference above the first level is a polynomial in the
    /// generators from level 2 up with coefficients in `F_1`.
    pub fn is_ring_tower(&self, level: usize) -> bool {
        (2..=level).all(|i| self.is_ring_element(self.tower.generator_delta(i)))
    }

    /// True when `f` is a polynomial in the generators from level 2 up.
    pub fn is_ring_element(&self, f: &Elem) -> bool {
        let level = self.tower.indicator(f);
        if level <= 1 {
            return true;
        }
        let v = self.tower.var_of_level(level);
        f.is_poly_in(v) && f.numer(v).coeffs().iter().all(|c| self.is_ring_element(c))
    }

    fn use_ring_path(&self, f: &Elem, level: usize) -> Result<bool> {
        if level < 2 {
            return Ok(false);
        }
        match self.options.fast_path {
            FastPathMode::Off => Ok(false),
            FastPathMode::Auto => Ok(self.is_ring_element(f) && self.is_ring_tower(level)),
            FastPathMode::On => {
                if self.is_ring_element(f) && self.is_ring_tower(level) {
                    Ok(true)
                } else {
                    Err(Error::InvalidInput(
                        "ring fast path requires polynomial differences and polynomial input".into(),
                    ))
                }
            }
        }
    }

    /// Shift equivalence with this session's window.
    pub fn shift_equivalence(&self, p: &Poly, q: &Poly) -> Option<i64> {
        shift_equivalence(&self.tower, p, q, self.options.se_window)
    }
}

/// Verdict for one generator of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelVerdict {
    /// The difference is not summable one level below.
    Valid,
    /// `Delta(t) = Delta(witness)`: the generator is not an indefinite-sum monomial.
    Summable {
        witness: Elem,
    },
    Undecided {
        reason: String,
    },
}

/// Checks level by level that every generator's difference has a nonzero
/// remainder one level below.
pub fn validate_tower(ctx: &mut ReductionContext) -> Vec<LevelVerdict> {
    (1..=ctx.height())
        .map(|level| {
            let delta = ctx.tower().generator_delta(level).clone();
            match ctx.complete_reduction(&delta, level - 1) {
                Ok(pair) if pair.r.is_zero() => LevelVerdict::Summable { witness: pair.g },
                Ok(_) => LevelVerdict::Valid,
                Err(e) => LevelVerdict::Undecided { reason: e.to_string() },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests;

//! Telescoping, parameterized telescoping, sigma-monomial checks and the
//! transformation to well generated towers.

use std::collections::BTreeSet;

use crate::arith::{Elem, Poly};
use crate::basis::xi_expand;
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::reduction::{ReductionContext, SigmaPair};
use crate::tower::TowerSpec;

/// Sigma-pair of `f` together with the summability verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Telescoped {
    pub pair: SigmaPair,
    pub summable: bool,
}

pub fn telescope(ctx: &mut ReductionContext, f: &Elem) -> Result<Telescoped> {
    let pair = ctx.reduce(f)?;
    let summable = pair.r.is_zero();
    Ok(Telescoped { pair, summable })
}

/// `sum c_j f_j = Delta(certificate)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamTelescopeRow {
    pub coeffs: Vec<Elem>,
    pub certificate: Elem,
}

impl ParamTelescopeRow {
    pub fn verify(&self, tower: &TowerSpec, fs: &[Elem]) -> bool {
        let lhs: Elem = self.coeffs.iter().zip(fs).map(|(c, f)| c * f).sum();
        lhs == tower.delta(&self.certificate)
    }
}

/// Basis of all `(c_1, ..., c_m, g)` with constants `c_j` and
/// `sum c_j f_j = Delta(g)`. The first row is the trivial `(0, ..., 0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamTelescopeBasis {
    pub rows: Vec<ParamTelescopeRow>,
}

impl ParamTelescopeBasis {
    pub fn verify(&self, tower: &TowerSpec, fs: &[Elem]) -> bool {
        self.rows.iter().all(|r| r.verify(tower, fs))
    }

    /// The nontrivial rows.
    pub fn relations(&self) -> &[ParamTelescopeRow] {
        &self.rows[1..]
    }
}

pub fn parameterized_telescope(ctx: &mut ReductionContext, fs: &[Elem]) -> Result<ParamTelescopeBasis> {
    let mut pairs = Vec::with_capacity(fs.len());
    for f in fs {
        pairs.push(ctx.reduce(f)?);
    }
    let mut expansions = Vec::with_capacity(fs.len());
    {
        let this = &*ctx;
        let mut fac = |p: &Poly| this.factor(p);
        for pair in &pairs {
            expansions.push(xi_expand(this.tower(), &pair.r, &mut fac)?);
        }
    }
    let keys: BTreeSet<_> = expansions.iter().flat_map(|e| e.keys().cloned()).collect();
    let system: Vec<Vec<Elem>> = keys
        .iter()
        .map(|k| expansions.iter().map(|e| e.get(k).cloned().unwrap_or_else(Elem::zero)).collect())
        .collect();
    let mut rows = vec![ParamTelescopeRow { coeffs: vec![Elem::zero(); fs.len()], certificate: Elem::one() }];
    for c in nullspace(&system, fs.len()) {
        let certificate = c.iter().zip(&pairs).map(|(c, p)| c * &p.g).sum();
        rows.push(ParamTelescopeRow { coeffs: c, certificate });
    }
    Ok(ParamTelescopeBasis { rows })
}

/// Verdict of the sigma-monomial test for a prospective difference `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaCheck {
    pub is_sigma_monomial: bool,
    /// `a = Delta(g) + r`; when `r != 0` a generator with difference `r` may be
    /// adjoined in place of one with difference `a`.
    pub witness: SigmaPair,
}

/// Decides whether `s` with `Delta(s) = a` is a new sigma-monomial over `F_level`.
pub fn sigma_check(ctx: &mut ReductionContext, a: &Elem, level: usize) -> Result<SigmaCheck> {
    if ctx.tower().indicator(a) > level {
        return Err(Error::InvalidInput(format!("element does not lie in level {level}")));
    }
    let witness = ctx.complete_reduction(a, level)?;
    Ok(SigmaCheck { is_sigma_monomial: !witness.r.is_zero(), witness })
}

/// Difference field isomorphism from one tower onto another over the same
/// constants, given by the images of the generators.
#[derive(Clone, Debug)]
pub struct IsomorphismMap {
    pub source: TowerSpec,
    pub target: TowerSpec,
    /// image of the generator of each level, in order
    pub images: Vec<Elem>,
    /// preimage of each target generator
    pub preimages: Vec<Elem>,
}

impl IsomorphismMap {
    pub fn apply(&self, f: &Elem) -> Elem {
        substitute(&self.source, f, &self.images)
    }

    pub fn inverse(&self, f: &Elem) -> Elem {
        substitute(&self.target, f, &self.preimages)
    }
}

/// Replaces the generator of level `i` by `images[i - 1]`; variables must match
/// between source and target.
fn substitute(tower: &TowerSpec, f: &Elem, images: &[Elem]) -> Elem {
    match f {
        Elem::Rat(_) => f.clone(),
        Elem::Frac(fr) => {
            let level = tower.level_of_var(fr.var());
            if level == 0 {
                return f.clone();
            }
            let image = &images[level - 1];
            let eval = |p: &Poly| {
                p.coeffs().iter().rev().fold(Elem::zero(), |acc, c| &(&acc * image) + &substitute(tower, c, images))
            };
            &eval(fr.num()) / &eval(fr.den())
        }
    }
}

/// A well generated tower isomorphic to the input, with its own reduction
/// context.
#[derive(Clone, Debug)]
pub struct WellGenerated {
    pub context: ReductionContext,
    pub map: IsomorphismMap,
}

/// Rebuilds the tower level by level so that every generator's difference is
/// its own remainder one level below.
pub fn well_generate(ctx: &mut ReductionContext) -> Result<WellGenerated> {
    let source = ctx.tower().clone();
    let target = TowerSpec::new(source.params().to_vec())?;
    let mut new_ctx = ReductionContext::new(target, ctx.options().clone());
    let mut images: Vec<Elem> = Vec::new();
    let mut preimages: Vec<Elem> = Vec::new();
    for level in 1..=source.height() {
        let delta = substitute(&source, source.generator_delta(level), &images);
        let pair = new_ctx.complete_reduction(&delta, level - 1)?;
        if pair.r.is_zero() {
            return Err(Error::NotSigmaMonomial { name: source.generator_name(level).to_string() });
        }
        let old_name = source.generator_name(level);
        let name = if pair.g.is_zero() { old_name.to_string() } else { fresh_name(&source, new_ctx.tower(), old_name) };
        new_ctx.push_generator(name, pair.r)?;
        let u = new_ctx.tower().generator(level);
        images.push(&u + &pair.g);
        let back = substitute(new_ctx.tower(), &pair.g, &preimages);
        preimages.push(&source.generator(level) - &back);
        let v = source.var_of_level(level);
        for rep in ctx.representatives(level).members().to_vec() {
            let image = substitute(&source, &Elem::from_poly(rep), &images);
            let p = image.numer(v).monic();
            new_ctx.seed_representative(level, &p)?;
        }
    }
    let map = IsomorphismMap { source, target: new_ctx.tower().clone(), images, preimages };
    Ok(WellGenerated { context: new_ctx, map })
}

fn fresh_name(source: &TowerSpec, target: &TowerSpec, old: &str) -> String {
    let base = match old.strip_prefix('t') {
        Some(rest) if rest.chars().all(|c| c.is_ascii_digit()) => format!("u{rest}"),
        _ => format!("u_{old}"),
    };
    let mut name = base;
    while source.lookup(&name).is_some() || target.lookup(&name).is_some() {
        name.push('_');
    }
    name
}

/// True when every generator's difference is its own remainder one level below.
pub fn is_well_generated(ctx: &mut ReductionContext) -> Result<bool> {
    for level in 1..=ctx.height() {
        let delta = ctx.tower().generator_delta(level).clone();
        let pair = ctx.complete_reduction(&delta, level - 1)?;
        if pair.r != delta {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nesting depth of each generator: 0 when its difference is constant,
/// otherwise one more than the deepest generator its difference involves.
pub fn generator_depths(tower: &TowerSpec) -> Vec<usize> {
    let mut depths: Vec<usize> = Vec::with_capacity(tower.height());
    for level in 1..=tower.height() {
        let used = levels_used(tower, tower.generator_delta(level));
        let d = if used.is_empty() { 0 } else { 1 + used.iter().map(|&l| depths[l - 1]).max().unwrap() };
        depths.push(d);
    }
    depths
}

fn levels_used(tower: &TowerSpec, f: &Elem) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    collect_levels(tower, f, &mut out);
    out
}

fn collect_levels(tower: &TowerSpec, f: &Elem, out: &mut BTreeSet<usize>) {
    if let Elem::Frac(fr) = f {
        let level = tower.level_of_var(fr.var());
        if level > 0 {
            out.insert(level);
        }
        for c in fr.num().coeffs().iter().chain(fr.den().coeffs()) {
            collect_levels(tower, c, out);
        }
    }
}

/// Number of nested summation quantifiers needed to express `sum f` through
/// the pair: the depth of the generators in `g`, and one more than the depth
/// of the generators in a nonzero `r`.
pub fn nesting_depth(tower: &TowerSpec, pair: &SigmaPair) -> usize {
    let depths = generator_depths(tower);
    let depth_of = |f: &Elem| levels_used(tower, f).iter().map(|&l| depths[l - 1]).max().unwrap_or(0);
    let mut d = depth_of(&pair.g);
    if !pair.r.is_zero() {
        d = d.max(1 + depth_of(&pair.r));
    }
    d
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthReduction {
    pub original: SigmaPair,
    /// `tau(f)` in the well generated tower
    pub image: Elem,
    pub pair: SigmaPair,
    pub depth_before: usize,
    pub depth_after: usize,
}

/// Reduces `tau(f)` in the well generated tower, reporting nesting depths
/// before and after.
pub fn depth_reduce(ctx: &mut ReductionContext, wg: &mut WellGenerated, f: &Elem) -> Result<DepthReduction> {
    let original = ctx.reduce(f)?;
    let image = wg.map.apply(f);
    let pair = wg.context.reduce(&image)?;
    Ok(DepthReduction {
        depth_before: nesting_depth(ctx.tower(), &original),
        depth_after: nesting_depth(wg.context.tower(), &pair),
        original,
        image,
        pair,
    })
}

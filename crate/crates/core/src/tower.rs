//! Difference-field towers `C(t1)...(tn)` with `sigma(ti) = ti + ai`.
//!
//! The constant field `C = Q(params)` is fixed by `sigma`. Variables are
//! numbered with the parameters first, so generator `i` (1-based) lives at
//! variable index `num_params + i - 1`.

use std::collections::HashMap;

use crate::arith::{Elem, Poly, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Generator {
    name: String,
    delta: Elem,
    /// `-sigma^{-1}(delta)`, so that `sigma^{-1}(t) = t + back`.
    back: Elem,
}

/// Parameters of the constant field and the ordered list of generators with
/// their shift differences.
#[derive(Clone, Debug)]
pub struct TowerSpec {
    params: Vec<String>,
    gens: Vec<Generator>,
    by_name: HashMap<String, Var>,
}

impl TowerSpec {
    pub fn new(params: Vec<String>) -> Result<TowerSpec> {
        let mut tower = TowerSpec { params: Vec::new(), gens: Vec::new(), by_name: HashMap::new() };
        for p in params {
            tower.check_name(&p)?;
            tower.by_name.insert(p.clone(), tower.params.len() as Var);
            tower.params.push(p);
        }
        Ok(tower)
    }

    /// Builds a tower from parameter names and `(name, delta)` pairs.
    pub fn with_generators(params: Vec<String>, gens: Vec<(String, Elem)>) -> Result<TowerSpec> {
        let mut tower = TowerSpec::new(params)?;
        for (name, delta) in gens {
            tower.push_generator(name, delta)?;
        }
        Ok(tower)
    }

    fn check_name(&self, name: &str) -> Result<()> {
        let mut chars = name.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::InvalidTower(format!("`{name}` is not a valid symbol name")));
        }
        if self.by_name.contains_key(name) {
            return Err(Error::InvalidTower(format!("duplicate symbol `{name}`")));
        }
        Ok(())
    }

    /// Appends a generator `t` with `sigma(t) = t + delta`. The difference must be
    /// a nonzero element of the current top field.
    pub fn push_generator(&mut self, name: impl Into<String>, delta: Elem) -> Result<usize> {
        let name = name.into();
        self.check_name(&name)?;
        if !delta.is_below(self.next_var()) {
            return Err(Error::InvalidTower(format!("difference of `{name}` refers to a symbol that is not below it")));
        }
        if delta.is_zero() {
            return Err(Error::InvalidTower(format!("difference of `{name}` is zero")));
        }
        let back = -self.sigma_inv(&delta);
        let var = self.next_var();
        self.by_name.insert(name.clone(), var);
        self.gens.push(Generator { name, delta, back });
        Ok(self.gens.len())
    }

    fn next_var(&self) -> Var {
        (self.params.len() + self.gens.len()) as Var
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn num_params(&self) -> usize {
        self.params.len()
    }

    /// Number of generators, i.e. the height of the tower.
    pub fn height(&self) -> usize {
        self.gens.len()
    }

    pub fn generator_names(&self) -> impl Iterator<Item = &str> {
        self.gens.iter().map(|g| g.name.as_str())
    }

    pub fn generator_name(&self, level: usize) -> &str {
        &self.gens[level - 1].name
    }

    /// `Delta(t_level)`.
    pub fn generator_delta(&self, level: usize) -> &Elem {
        &self.gens[level - 1].delta
    }

    pub fn var_of_level(&self, level: usize) -> Var {
        assert!(level >= 1 && level <= self.gens.len(), "level {level} out of range");
        (self.params.len() + level - 1) as Var
    }

    /// 0 for parameters (constants), otherwise the generator level.
    pub fn level_of_var(&self, v: Var) -> usize {
        let v = v as usize;
        if v < self.params.len() {
            0
        } else {
            v - self.params.len() + 1
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.by_name.get(name).copied()
    }

    pub fn symbol_name(&self, v: Var) -> &str {
        let v = v as usize;
        if v < self.params.len() {
            &self.params[v]
        } else {
            &self.gens[v - self.params.len()].name
        }
    }

    /// The generator `t_level` as a field element.
    pub fn generator(&self, level: usize) -> Elem {
        Elem::var(self.var_of_level(level))
    }

    /// Smallest level `i` with `f` in `F_i`.
    pub fn indicator(&self, f: &Elem) -> usize {
        f.top_var().map_or(0, |v| self.level_of_var(v))
    }

    pub fn is_constant(&self, f: &Elem) -> bool {
        self.indicator(f) == 0
    }

    pub fn sigma(&self, f: &Elem) -> Elem {
        self.shift(f, true)
    }

    pub fn sigma_inv(&self, f: &Elem) -> Elem {
        self.shift(f, false)
    }

    /// `sigma^k(f)` for any integer `k`, by iterating single shifts.
    pub fn sigma_pow(&self, f: &Elem, k: i64) -> Elem {
        let mut out = f.clone();
        for _ in 0..k.unsigned_abs() {
            out = self.shift(&out, k > 0);
        }
        out
    }

    /// `Delta(f) = sigma(f) - f`.
    pub fn delta(&self, f: &Elem) -> Elem {
        &self.sigma(f) - f
    }

    /// Applies `sigma` to a polynomial in some generator variable (coefficients
    /// and variable alike).
    pub fn sigma_poly(&self, p: &Poly) -> Poly {
        self.shift_poly(p, true)
    }

    pub fn sigma_inv_poly(&self, p: &Poly) -> Poly {
        self.shift_poly(p, false)
    }

    pub fn sigma_pow_poly(&self, p: &Poly, k: i64) -> Poly {
        let mut out = p.clone();
        for _ in 0..k.unsigned_abs() {
            out = self.shift_poly(&out, k > 0);
        }
        out
    }

    fn shift(&self, f: &Elem, forward: bool) -> Elem {
        match f {
            Elem::Rat(_) => f.clone(),
            Elem::Frac(fr) => {
                if self.level_of_var(fr.var()) == 0 {
                    return f.clone();
                }
                let num = self.shift_poly(fr.num(), forward);
                let den = self.shift_poly(fr.den(), forward);
                // sigma is an automorphism: coprimality and monicity survive
                Elem::from_reduced(num, den)
            }
        }
    }

    fn shift_poly(&self, p: &Poly, forward: bool) -> Poly {
        let level = self.level_of_var(p.var());
        if level == 0 || p.is_zero() {
            return p.clone();
        }
        let g = &self.gens[level - 1];
        let a = if forward { &g.delta } else { &g.back };
        let mut acc = Poly::zero(p.var());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul_linear(a);
            let sc = self.shift(c, forward);
            acc = acc.add(&Poly::constant(p.var(), sc));
        }
        acc
    }
}

//! Rational images of shifted polynomials.
//!
//! Substituting rationals for the variables below a generator `t` turns a
//! monic polynomial in `t` into one over `Q`. Since `sigma^k` acts on the lower
//! variables by stepping the point, the image of `sigma^k(p)` is
//! `sum p_i(P_k) (t + D_k)^i` with `P_k` the `k`-th shifted point and
//! `D_k = sum_{j<k} Delta(t)(P_j)`. Divisibility, shift equality and nontrivial
//! gcds all survive specialization, so a failed test on images rules a
//! candidate out without any symbolic shifting.

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{eval_at, Elem, Poly, Var};
use crate::tower::TowerSpec;

type Point = Vec<Option<BigRational>>;

/// Shifted points and offsets below one generator, grown on demand.
pub(crate) struct ShiftImages<'a> {
    tower: &'a TowerSpec,
    var: Var,
    level: usize,
    /// `(P_k, D_k)` for `k = 0, 1, ...`
    fwd: Vec<Option<(Point, BigRational)>>,
    /// `(P_{-k}, D_{-k})` for `k = 0, 1, ...`
    back: Vec<Option<(Point, BigRational)>>,
}

fn base_point(n: usize) -> Point {
    // nonintegral so that integer shifts of `x` avoid the usual poles
    (0..n).map(|i| Some(BigRational::new((29 + 11 * i as i64).into(), (7 + 2 * i as i64).into()))).collect()
}

impl<'a> ShiftImages<'a> {
    pub(crate) fn new(tower: &'a TowerSpec, var: Var) -> ShiftImages<'a> {
        let level = tower.level_of_var(var);
        let start = Some((base_point(var as usize), BigRational::zero()));
        ShiftImages { tower, var, level, fwd: vec![start.clone()], back: vec![start] }
    }

    fn step(&self, from: &(Point, BigRational), forward: bool) -> Option<(Point, BigRational)> {
        let (p, d) = from;
        let mut next = p.clone();
        let np = self.tower.num_params();
        for l in 1..self.level {
            let v = np + l - 1;
            let delta = self.tower.generator_delta(l);
            // Delta(t_l) only involves lower variables, already stepped in `next`
            let value = if forward { eval_at(delta, p)? } else { -eval_at(delta, &next)? };
            next[v] = Some(p[v].as_ref()? + value);
        }
        let own = self.tower.generator_delta(self.level);
        let shift = if forward { eval_at(own, p)? } else { -eval_at(own, &next)? };
        Some((next, d + shift))
    }

    fn at(&mut self, k: i64) -> Option<(Point, BigRational)> {
        if self.level == 0 {
            return None;
        }
        let forward = k >= 0;
        let idx = k.unsigned_abs() as usize;
        loop {
            let table = if forward { &self.fwd } else { &self.back };
            if idx < table.len() {
                return table[idx].clone();
            }
            let next = table.last().cloned().flatten().and_then(|last| self.step(&last, forward));
            if forward {
                self.fwd.push(next);
            } else {
                self.back.push(next);
            }
        }
    }

    /// Image of `sigma^k(p)`, or `None` when the point meets a pole or the
    /// leading coefficient vanishes.
    pub(crate) fn image(&mut self, p: &Poly, k: i64) -> Option<Poly> {
        debug_assert_eq!(p.var(), self.var);
        let (point, offset) = self.at(k)?;
        let shifted_t = Poly::new(self.var, vec![Elem::from(offset), Elem::one()]);
        let mut acc = Poly::zero(self.var);
        for c in p.coeffs().iter().rev() {
            let c = Poly::constant(self.var, Elem::from(eval_at(c, &point)?));
            acc = acc.mul(&shifted_t).add(&c);
        }
        (acc.deg() == p.deg()).then_some(acc)
    }
}

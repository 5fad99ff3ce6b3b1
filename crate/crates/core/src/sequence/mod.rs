//! Evaluation of tower elements as rational sequences and numeric checks of
//! sigma-pairs and recurrences.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use crate::arith::eval_at;
use crate::arith::{Elem, Poly};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::reduction::SigmaPair;
use crate::tower::TowerSpec;

/// Start index, generator values there, and parameter values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceAssignment {
    pub start: i64,
    pub initial: BTreeMap<String, BigRational>,
    pub params: BTreeMap<String, BigRational>,
}

impl SequenceAssignment {
    /// Start 0 with every generator 0 there, except that a generator with
    /// constant difference `c` starts at `c * start` (so `x(k) = k`).
    pub fn new(tower: &TowerSpec, start: i64, params: BTreeMap<String, BigRational>) -> Result<SequenceAssignment> {
        let mut assign = SequenceAssignment { start, initial: BTreeMap::new(), params };
        let vals = assign.param_values(tower)?;
        for level in 1..=tower.height() {
            let delta = tower.generator_delta(level);
            let v = if tower.is_constant(delta) {
                eval_at(delta, &vals).ok_or(Error::DivisionByZero)? * BigRational::from_integer(start.into())
            } else {
                BigRational::zero()
            };
            assign.initial.insert(tower.generator_name(level).to_string(), v);
        }
        Ok(assign)
    }

    pub fn default_for(tower: &TowerSpec) -> Result<SequenceAssignment> {
        SequenceAssignment::new(tower, 0, BTreeMap::new())
    }

    pub fn with_param(mut self, name: &str, value: BigRational) -> SequenceAssignment {
        self.params.insert(name.to_string(), value);
        self
    }

    fn param_values(&self, tower: &TowerSpec) -> Result<Vec<Option<BigRational>>> {
        tower
            .params()
            .iter()
            .map(|p| {
                self.params
                    .get(p)
                    .cloned()
                    .map(Some)
                    .ok_or_else(|| Error::InvalidInput(format!("no value for parameter `{p}`")))
            })
            .collect()
    }
}

/// A value of a sequence, or a pole somewhere in its evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqValue {
    Value(BigRational),
    Pole,
}

impl SeqValue {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            SeqValue::Value(v) => Some(v),
            SeqValue::Pole => None,
        }
    }
}

/// Generator values along the integers, advanced by the defining recurrences
/// in both directions from the start index. A pole in some difference makes
/// that generator undefined from then on.
#[derive(Clone, Debug)]
pub struct SequenceEvaluator<'a> {
    tower: &'a TowerSpec,
    start: i64,
    params: Vec<Option<BigRational>>,
    forward: Vec<Vec<Option<BigRational>>>,
    backward: Vec<Vec<Option<BigRational>>>,
}

impl<'a> SequenceEvaluator<'a> {
    pub fn new(tower: &'a TowerSpec, assign: &SequenceAssignment) -> Result<SequenceEvaluator<'a>> {
        let params = assign.param_values(tower)?;
        let mut first = params.clone();
        for name in tower.generator_names() {
            let v = assign
                .initial
                .get(name)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("no initial value for generator `{name}`")))?;
            first.push(Some(v));
        }
        Ok(SequenceEvaluator { tower, start: assign.start, params, forward: vec![first], backward: Vec::new() })
    }

    fn step(&self, cur: &[Option<BigRational>], up: bool) -> Vec<Option<BigRational>> {
        let np = self.params.len();
        let mut next = self.params.clone();
        for level in 1..=self.tower.height() {
            let delta = self.tower.generator_delta(level);
            let v = np + level - 1;
            let val = if up {
                // t(k+1) = t(k) + a(k)
                match (&cur[v], eval_at(delta, cur)) {
                    (Some(t), Some(a)) => Some(t + a),
                    _ => None,
                }
            } else {
                // t(k-1) = t(k) - a(k-1), with a(k-1) using the lower values at k-1
                let mut probe = next.clone();
                probe.resize(cur.len(), None);
                match (&cur[v], eval_at(delta, &probe)) {
                    (Some(t), Some(a)) => Some(t - a),
                    _ => None,
                }
            };
            next.push(val);
        }
        next
    }

    /// All variable values at index `k`.
    pub fn point(&mut self, k: i64) -> &[Option<BigRational>] {
        if k >= self.start {
            let idx = (k - self.start) as usize;
            while self.forward.len() <= idx {
                let next = self.step(self.forward.last().unwrap(), true);
                self.forward.push(next);
            }
            &self.forward[idx]
        } else {
            let idx = (self.start - k - 1) as usize;
            while self.backward.len() <= idx {
                let cur = self.backward.last().unwrap_or(&self.forward[0]);
                let next = self.step(cur, false);
                self.backward.push(next);
            }
            &self.backward[idx]
        }
    }

    pub fn eval(&mut self, f: &Elem, k: i64) -> SeqValue {
        match eval_at(f, self.point(k)) {
            Some(v) => SeqValue::Value(v),
            None => SeqValue::Pole,
        }
    }
}

pub fn eval_sequence(
    tower: &TowerSpec,
    f: &Elem,
    assign: &SequenceAssignment,
    k_from: i64,
    k_to: i64,
) -> Result<Vec<(i64, SeqValue)>> {
    let mut ev = SequenceEvaluator::new(tower, assign)?;
    Ok((k_from..=k_to).map(|k| (k, ev.eval(f, k))).collect())
}

/// Outcome of a pointwise check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checked: Vec<i64>,
    pub poles: Vec<i64>,
    /// points with a nonzero residual, and the residual
    pub failures: Vec<(i64, BigRational)>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `f(k) = g(k+1) - g(k) + r(k)` on `k_from..=k_to`.
pub fn verify_sigma_pair(
    tower: &TowerSpec,
    f: &Elem,
    pair: &SigmaPair,
    assign: &SequenceAssignment,
    k_from: i64,
    k_to: i64,
) -> Result<VerificationReport> {
    let mut ev = SequenceEvaluator::new(tower, assign)?;
    let mut report = VerificationReport::default();
    for k in k_from..=k_to {
        let vals = [ev.eval(f, k), ev.eval(&pair.g, k + 1), ev.eval(&pair.g, k), ev.eval(&pair.r, k)];
        let [Some(fv), Some(g1), Some(g0), Some(rv)] = vals.each_ref().map(SeqValue::value) else {
            report.poles.push(k);
            continue;
        };
        let residual = fv - g1 + g0 - rv;
        report.checked.push(k);
        if !residual.is_zero() {
            report.failures.push((k, residual));
        }
    }
    Ok(report)
}

/// `S(n) = sum_{k = lower}^{n + upper_offset} f(n, k)` where `n` is a
/// parameter of the tower and `k` indexes the sequences of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumDefinition {
    pub summand: Elem,
    pub param: String,
    pub lower: i64,
    pub upper_offset: i64,
}

impl SumDefinition {
    /// Direct evaluation of `S(n)`, `None` if a summand hits a pole.
    pub fn eval(&self, tower: &TowerSpec, assign: &SequenceAssignment, n: i64) -> Result<Option<BigRational>> {
        let assign = assign.clone().with_param(&self.param, BigRational::from_integer(n.into()));
        let mut ev = SequenceEvaluator::new(tower, &assign)?;
        let mut acc = BigRational::zero();
        for k in self.lower..=n + self.upper_offset {
            match ev.eval(&self.summand, k) {
                SeqValue::Value(v) => acc += v,
                SeqValue::Pole => return Ok(None),
            }
        }
        Ok(Some(acc))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    /// `sum_j c_j(n) S(n + j)` for each `n`; `None` at poles
    pub residuals: Vec<(i64, Option<BigRational>)>,
    /// A rational function of the parameter matching every residual, if one
    /// of low degree exists.
    pub fitted: Option<Elem>,
}

/// Evaluates `sum_j c_j(n) S(n + j)` on `n_from..=n_to`, the coefficients
/// being constants of the tower (functions of the parameter `n`).
pub fn verify_recurrence(
    tower: &TowerSpec,
    coeffs: &[Elem],
    sum: &SumDefinition,
    assign: &SequenceAssignment,
    n_from: i64,
    n_to: i64,
) -> Result<RecurrenceReport> {
    let pvar = tower
        .lookup(&sum.param)
        .filter(|&v| (v as usize) < tower.num_params())
        .ok_or_else(|| Error::UnknownSymbol(sum.param.clone()))?;
    let mut cache: BTreeMap<i64, Option<BigRational>> = BTreeMap::new();
    let mut residuals = Vec::new();
    for n in n_from..=n_to {
        let at = assign.clone().with_param(&sum.param, BigRational::from_integer(n.into()));
        let vals = at.param_values(tower)?;
        let mut acc = Some(BigRational::zero());
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = n + j as i64;
            if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(m) {
                e.insert(sum.eval(tower, assign, m)?);
            }
            acc = match (acc, eval_at(c, &vals), &cache[&m]) {
                (Some(a), Some(cv), Some(s)) => Some(a + cv * s),
                _ => None,
            };
        }
        residuals.push((n, acc));
    }
    let fitted = fit_rational(&residuals, pvar);
    Ok(RecurrenceReport { residuals, fitted })
}

const FIT_MAX_DEGREE: usize = 3;

/// Smallest-degree `a(n)/b(n)` through all points, requiring at least two
/// spare points as a check.
fn fit_rational(points: &[(i64, Option<BigRational>)], var: u32) -> Option<Elem> {
    let pts: Vec<(BigRational, BigRational)> =
        points.iter().filter_map(|(n, v)| v.clone().map(|v| (BigRational::from_integer((*n).into()), v))).collect();
    if pts.iter().all(|(_, v)| v.is_zero()) {
        return (!pts.is_empty()).then(Elem::zero);
    }
    for total in 0..=2 * FIT_MAX_DEGREE {
        for dn in 0..=total.min(FIT_MAX_DEGREE) {
            let dd = total - dn;
            if dd > FIT_MAX_DEGREE || pts.len() < dn + dd + 4 {
                continue;
            }
            // unknowns a_0..a_dn, b_0..b_dd with a(n) - v b(n) = 0
            let rows: Vec<Vec<Elem>> = pts
                .iter()
                .map(|(n, v)| {
                    let mut row = Vec::with_capacity(dn + dd + 2);
                    let mut p = BigRational::one();
                    for _ in 0..=dn {
                        row.push(Elem::from(p.clone()));
                        p = &p * n;
                    }
                    let mut p = -v.clone();
                    for _ in 0..=dd {
                        row.push(Elem::from(p.clone()));
                        p = &p * n;
                    }
                    row
                })
                .collect();
            let ns = nullspace(&rows, dn + dd + 2);
            if ns.len() != 1 {
                continue;
            }
            let sol = &ns[0];
            let num = Poly::new(var, sol[..=dn].to_vec());
            let den = Poly::new(var, sol[dn + 1..].to_vec());
            if den.is_zero() {
                continue;
            }
            if let Ok(f) = Elem::from_parts(num, den) {
                return Some(f);
            }
        }
    }
    None
}

//! Exact Fourier–Motzkin elimination over the rationals.
//!
//! Inequalities read `coeffs · z + constant ≥ 0` with primitive integer
//! coefficients. Each carries the set of input rows it was combined from;
//! after `k` eliminations a row built from more than `k + 1` inputs is
//! redundant (Chernikov's rule) and is dropped.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::caps::ensure_cap;
use crate::error::Result;
use crate::linalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ineq {
    pub coeffs: Vec<BigInt>,
    pub constant: Rational,
    history: Vec<u64>,
}

impl Ineq {
    /// Input row number `id`.
    pub fn new(coeffs: Vec<BigInt>, constant: Rational, id: usize) -> Self {
        let mut history = vec![0u64; id / 64 + 1];
        history[id / 64] |= 1 << (id % 64);
        let mut q = Ineq { coeffs, constant, history };
        q.normalize();
        q
    }

    fn normalize(&mut self) {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && g != BigInt::from(1) {
            self.coeffs.iter_mut().for_each(|c| *c /= &g);
            self.constant = &self.constant / Rational::from_integer(g);
        }
    }

    fn history_len(&self) -> u32 {
        self.history.iter().map(|w| w.count_ones()).sum()
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Value of the left-hand side at `z`.
    pub fn eval(&self, z: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(z)
            .filter(|(c, _)| !c.is_zero())
            .fold(self.constant.clone(), |acc, (c, x)| acc + x * Rational::from_integer(c.clone()))
    }

    fn combine(pos: &Ineq, neg: &Ineq, var: usize) -> Ineq {
        let a = pos.coeffs[var].clone();
        let b = -neg.coeffs[var].clone();
        let coeffs = pos.coeffs.iter().zip(&neg.coeffs).map(|(p, q)| p * &b + q * &a).collect();
        let constant = &pos.constant * Rational::from_integer(b) + &neg.constant * Rational::from_integer(a);
        let len = pos.history.len().max(neg.history.len());
        let history = (0..len).map(|i| pos.history.get(i).unwrap_or(&0) | neg.history.get(i).unwrap_or(&0)).collect();
        let mut q = Ineq { coeffs, constant, history };
        q.normalize();
        q
    }
}

/// Outcome of one elimination step.
enum Step {
    Infeasible,
    Rows(Vec<Ineq>),
}

/// Drop trivial rows and keep only the tightest row per coefficient vector.
fn tidy(rows: Vec<Ineq>) -> Step {
    let mut best: HashMap<Vec<BigInt>, Ineq> = HashMap::new();
    for q in rows {
        if q.is_trivial() {
            if q.constant.is_negative() {
                return Step::Infeasible;
            }
            continue;
        }
        match best.get(&q.coeffs) {
            Some(old) if old.constant <= q.constant => {}
            _ => {
                best.insert(q.coeffs.clone(), q);
            }
        }
    }
    let mut out: Vec<Ineq> = best.into_values().collect();
    out.sort_by(|a, b| a.coeffs.cmp(&b.coeffs).then_with(|| a.constant.cmp(&b.constant)));
    Step::Rows(out)
}

fn eliminate(rows: &[Ineq], var: usize, done: usize, cap: usize) -> Result<Step> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for q in rows {
        if q.coeffs[var].is_positive() {
            pos.push(q);
        } else if q.coeffs[var].is_negative() {
            neg.push(q);
        } else {
            out.push(q.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            let c = Ineq::combine(p, n, var);
            if c.history_len() as usize <= done + 1 {
                out.push(c);
            }
        }
        ensure_cap("Fourier-Motzkin intermediate rows", out.len(), cap)?;
    }
    Ok(tidy(out))
}

fn cost(rows: &[Ineq], var: usize) -> usize {
    let p = rows.iter().filter(|q| q.coeffs[var].is_positive()).count();
    let n = rows.iter().filter(|q| q.coeffs[var].is_negative()).count();
    p * n
}

/// Eliminate `vars` (cheapest first) and return the rows left over the
/// remaining coordinates, or `None` when the system is infeasible for every
/// value of the remaining coordinates.
pub fn project(rows: Vec<Ineq>, vars: &[usize], cap: usize) -> Result<Option<Vec<Ineq>>> {
    Ok(project_with_stages(rows, vars, cap)?.map(|(stages, _)| stages.last().cloned().unwrap_or_default()))
}

type Stages = (Vec<Vec<Ineq>>, Vec<usize>);

fn project_with_stages(rows: Vec<Ineq>, vars: &[usize], cap: usize) -> Result<Option<Stages>> {
    let Step::Rows(mut cur) = tidy(rows) else {
        return Ok(None);
    };
    let mut left: Vec<usize> = vars.to_vec();
    let mut stages = vec![cur.clone()];
    let mut order = Vec::new();
    while !left.is_empty() {
        let (i, &var) = left.iter().enumerate().min_by_key(|(_, &v)| cost(&cur, v)).expect("nonempty");
        left.remove(i);
        match eliminate(&cur, var, order.len() + 1, cap)? {
            Step::Infeasible => return Ok(None),
            Step::Rows(next) => cur = next,
        }
        order.push(var);
        stages.push(cur.clone());
    }
    Ok(Some((stages, order)))
}

/// A rational point satisfying every row, or `None` if there is none.
pub fn feasible_point(rows: Vec<Ineq>, nvars: usize, cap: usize) -> Result<Option<Vec<Rational>>> {
    let vars: Vec<usize> = (0..nvars).collect();
    let Some((stages, order)) = project_with_stages(rows, &vars, cap)? else {
        return Ok(None);
    };
    let mut z = vec![Rational::zero(); nvars];
    // stage k still mentions order[k]; every later variable is already fixed
    for (k, &var) in order.iter().enumerate().rev() {
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        z[var] = Rational::zero();
        for q in &stages[k] {
            let a = &q.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let bound = -q.eval(&z) / Rational::from_integer(a.clone());
            if a.is_positive() {
                lower = Some(lower.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                upper = Some(upper.map_or(bound.clone(), |u| u.min(bound)));
            }
        }
        z[var] = match (lower, upper) {
            (Some(l), _) => l,
            (None, Some(u)) => u,
            (None, None) => Rational::zero(),
        };
    }
    debug_assert!(stages[0].iter().all(|q| !q.eval(&z).is_negative()));
    Ok(Some(z))
}

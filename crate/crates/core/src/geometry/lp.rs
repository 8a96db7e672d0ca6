//   Copyright 2026 pwa-rs developers
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.

//! Exact linear programming over halfspace systems.
//!
//! Dictionary simplex with Bland's rule on free variables (split as
//! `x = x⁺ - x⁻`). Infeasible starts go through the one-variable auxiliary
//! problem. Every answer is exact; there are no tolerances.

use super::{Halfspace, Rational, Vector};
use crate::error::{check_dim, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, witness: Vector },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Dictionary {
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    rhs: Vec<Rational>,
    coef: Vec<Vec<Rational>>,
    obj_const: Rational,
    obj: Vec<Rational>,
}

impl Dictionary {
    fn pivot(&mut self, r: usize, e: usize) {
        let a = self.coef[r][e].clone();
        debug_assert!(!a.is_zero());
        let inv = a.recip();
        let neg_inv = -&inv;
        // Row r solved for the entering variable.
        let new_rhs = &self.rhs[r] * &neg_inv;
        let mut new_row: Vec<Rational> = self.coef[r].iter().map(|c| c * &neg_inv).collect();
        new_row[e] = inv;
        self.rhs[r] = new_rhs;
        self.coef[r] = new_row;

        let (pivot_rhs, pivot_row) = (self.rhs[r].clone(), self.coef[r].clone());
        let substitute = |rhs: &mut Rational, row: &mut Vec<Rational>| {
            let f = std::mem::take(&mut row[e]);
            if f.is_zero() {
                return;
            }
            *rhs += &f * &pivot_rhs;
            for (k, p) in pivot_row.iter().enumerate() {
                if k == e {
                    row[k] = &f * p;
                } else if !p.is_zero() {
                    row[k] += &f * p;
                }
            }
        };
        for i in 0..self.rhs.len() {
            if i != r {
                let (rhs, row) = (&mut self.rhs[i], &mut self.coef[i]);
                substitute(rhs, row);
            }
        }
        substitute(&mut self.obj_const, &mut self.obj);
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[e]);
    }

    /// Runs Bland's rule to optimality; `false` means unbounded.
    fn optimize(&mut self) -> bool {
        loop {
            let entering = self
                .obj
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_positive())
                .min_by_key(|(k, _)| self.nonbasic[*k])
                .map(|(k, _)| k);
            let Some(e) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rhs.len() {
                let c = &self.coef[i][e];
                if !c.is_negative() {
                    continue;
                }
                let ratio = &self.rhs[i] / &(-c);
                let better = match &leave {
                    None => true,
                    Some((j, best)) => {
                        ratio < *best || (ratio == *best && self.basic[i] < self.basic[*j])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return false,
            }
        }
    }

    fn values(&self, nvars: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); nvars];
        for (i, &b) in self.basic.iter().enumerate() {
            if b < nvars {
                v[b] = self.rhs[i].clone();
            }
        }
        v
    }
}

/// Maximizes `c·x` subject to `a_i·x ≤ b_i` with `x` free.
fn maximize(objective: &[Rational], rows: &[(&Vector, &Rational)]) -> LpOutcome {
    let n = objective.len();
    let m = rows.len();
    let split = 2 * n;
    let aux = split + m;

    let mut coef: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(a, _)| {
            let mut row = Vec::with_capacity(split + 1);
            row.extend(a.iter().map(|v| -v));
            row.extend(a.iter().cloned());
            row
        })
        .collect();
    let rhs: Vec<Rational> = rows.iter().map(|(_, b)| (*b).clone()).collect();
    let mut nonbasic: Vec<usize> = (0..split).collect();
    let basic: Vec<usize> = (split..split + m).collect();

    let needs_phase_one = rhs.iter().any(Rational::is_negative);
    if needs_phase_one {
        for row in coef.iter_mut() {
            row.push(Rational::one());
        }
        nonbasic.push(aux);
    }
    let width = nonbasic.len();
    let mut dict = Dictionary {
        basic,
        nonbasic,
        rhs,
        coef,
        obj_const: Rational::zero(),
        obj: vec![Rational::zero(); width],
    };

    if needs_phase_one {
        let e = width - 1;
        dict.obj[e] = -Rational::one();
        let r = (0..m)
            .min_by(|&i, &j| {
                dict.rhs[i]
                    .cmp(&dict.rhs[j])
                    .then(dict.basic[i].cmp(&dict.basic[j]))
            })
            .expect("phase one needs a negative row");
        dict.pivot(r, e);
        let bounded = dict.optimize();
        debug_assert!(bounded, "auxiliary problem is bounded");
        if dict.obj_const.is_negative() {
            return LpOutcome::Infeasible;
        }
        if let Some(r) = dict.basic.iter().position(|&b| b == aux) {
            // Degenerate: aux sits in the basis at level zero.
            let col = (0..dict.nonbasic.len())
                .filter(|&k| !dict.coef[r][k].is_zero())
                .min_by_key(|&k| dict.nonbasic[k]);
            match col {
                Some(k) => dict.pivot(r, k),
                None => {
                    dict.basic.remove(r);
                    dict.rhs.remove(r);
                    dict.coef.remove(r);
                }
            }
        }
        if let Some(k) = dict.nonbasic.iter().position(|&v| v == aux) {
            dict.nonbasic.remove(k);
            for row in dict.coef.iter_mut() {
                row.remove(k);
            }
        }
    }

    // Phase two objective in terms of the current nonbasic variables.
    let width = dict.nonbasic.len();
    let mut obj = vec![Rational::zero(); width];
    let mut obj_const = Rational::zero();
    let var_cost = |v: usize| -> Option<Rational> {
        if v < n {
            Some(objective[v].clone())
        } else if v < split {
            Some(-&objective[v - n])
        } else {
            None
        }
    };
    for (k, &v) in dict.nonbasic.iter().enumerate() {
        if let Some(c) = var_cost(v) {
            obj[k] += c;
        }
    }
    for (i, &v) in dict.basic.iter().enumerate() {
        let Some(c) = var_cost(v) else { continue };
        if c.is_zero() {
            continue;
        }
        obj_const += &c * &dict.rhs[i];
        for (o, a) in obj.iter_mut().zip(&dict.coef[i]).take(width) {
            if !a.is_zero() {
                *o += &c * a;
            }
        }
    }
    dict.obj = obj;
    dict.obj_const = obj_const;

    if !dict.optimize() {
        return LpOutcome::Unbounded;
    }
    let values = dict.values(split);
    let witness = (0..n).map(|j| &values[j] - &values[n + j]).collect();
    LpOutcome::Optimal {
        value: dict.obj_const,
        witness,
    }
}

fn check_constraints(dim: usize, constraints: &[Halfspace]) -> Result<()> {
    constraints.iter().try_for_each(|h| check_dim(dim, h.dim()))
}

/// Optimizes `objective·x` over `{x : a·x ≤ α for every constraint}`.
pub fn solve_lp(
    objective: &Vector,
    constraints: &[Halfspace],
    direction: Direction,
) -> Result<LpOutcome> {
    check_constraints(objective.dim(), constraints)?;
    Ok(solve_lp_unchecked(objective, constraints, direction))
}

pub(crate) fn solve_lp_unchecked(
    objective: &Vector,
    constraints: &[Halfspace],
    direction: Direction,
) -> LpOutcome {
    let rows: Vec<_> = constraints.iter().map(|h| (&h.normal, &h.bound)).collect();
    match direction {
        Direction::Maximize => maximize(objective.entries(), &rows),
        Direction::Minimize => {
            let neg: Vec<Rational> = objective.iter().map(|v| -v).collect();
            match maximize(&neg, &rows) {
                LpOutcome::Optimal { value, witness } => LpOutcome::Optimal {
                    value: -value,
                    witness,
                },
                other => other,
            }
        }
    }
}

/// Some point of the polyhedron, if any.
pub fn feasible_point(dim: usize, constraints: &[Halfspace]) -> Option<Vector> {
    match solve_lp_unchecked(&Vector::zeros(dim), constraints, Direction::Maximize) {
        LpOutcome::Optimal { witness, .. } => Some(witness),
        _ => None,
    }
}

/// Is there `x` with strict rows `< α`, weak rows `≤ α` and equalities `= α`?
///
/// Maximizes a common slack `t ≤ 1` with `a·x + t ≤ α` on the strict rows.
pub fn strict_feasible(
    strict: &[Halfspace],
    weak: &[Halfspace],
    equalities: &[(Vector, Rational)],
) -> Result<bool> {
    let dim = strict
        .iter()
        .chain(weak)
        .map(Halfspace::dim)
        .chain(equalities.iter().map(|(a, _)| a.dim()))
        .next()
        .unwrap_or(0);
    check_constraints(dim, strict)?;
    check_constraints(dim, weak)?;
    equalities
        .iter()
        .try_for_each(|(a, _)| check_dim(dim, a.dim()))?;
    Ok(strict_feasible_point(dim, strict, weak, equalities).is_some())
}

/// Witness for [`strict_feasible`]: a point satisfying the strict rows strictly.
pub fn strict_feasible_point(
    dim: usize,
    strict: &[Halfspace],
    weak: &[Halfspace],
    equalities: &[(Vector, Rational)],
) -> Option<Vector> {
    let lift = |a: &Vector, t: i64| {
        let mut e = a.entries().to_vec();
        e.push(Rational::from_integer(t));
        Vector::new(e)
    };
    let mut rows: Vec<Halfspace> = Vec::new();
    for h in strict {
        if h.is_degenerate() {
            if h.bound.is_positive() {
                continue;
            }
            return None;
        }
        rows.push(Halfspace::new(lift(&h.normal, 1), h.bound.clone()));
    }
    for h in weak {
        rows.push(Halfspace::new(lift(&h.normal, 0), h.bound.clone()));
    }
    for (a, alpha) in equalities {
        rows.push(Halfspace::new(lift(a, 0), alpha.clone()));
        rows.push(Halfspace::new(lift(&a.neg(), 0), -alpha));
    }
    rows.push(Halfspace::new(Vector::unit(dim + 1, dim), Rational::one()));
    let objective = Vector::unit(dim + 1, dim);
    match solve_lp_unchecked(&objective, &rows, Direction::Maximize) {
        LpOutcome::Optimal { value, witness } if value.is_positive() => {
            Some(Vector::new(witness.entries()[..dim].to_vec()))
        }
        _ => None,
    }
}

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

//! Max-of-affine, min-max, max-min, difference-of-convex and common-family
//! representations, all computed on the solid refined partition.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{AffineMap, LpOutcome, Rational, Vector};
use crate::polyhedra::ConvexPolyhedron;

use super::{OrderingCone, PwaMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    /// `inf_i sup_j A_ij`
    MinMax,
    /// `sup_i inf_j A_ij`
    MaxMin,
    /// `sup plus − sup minus`, stored as the two groups `[plus, minus]`
    Dc,
    /// `sup` of the single group
    MaxAffine,
    /// `A_ij = C_i − D_j`; `sup_i inf_j` and `inf_j sup_i` both give the map
    Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    MinMax,
    MaxMin,
}

/// Cap on the number of affine maps a form may hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormLimits {
    pub max_maps: usize,
}

impl Default for FormLimits {
    fn default() -> Self {
        FormLimits { max_maps: 100_000 }
    }
}

/// A two-index family of affine maps with its evaluation rule. Sup and inf
/// are taken coordinatewise in the coordinates of `cone` (standard if absent).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawForm")]
pub struct CanonicalForm {
    pub kind: FormKind,
    pub groups: Vec<Vec<AffineMap>>,
    pub cone: Option<OrderingCone>,
}

#[derive(Deserialize)]
struct RawForm {
    kind: FormKind,
    groups: Vec<Vec<AffineMap>>,
    cone: Option<OrderingCone>,
}

impl TryFrom<RawForm> for CanonicalForm {
    type Error = Error;

    fn try_from(raw: RawForm) -> Result<Self> {
        CanonicalForm::new(raw.kind, raw.groups, raw.cone)
    }
}

impl CanonicalForm {
    pub fn new(
        kind: FormKind,
        groups: Vec<Vec<AffineMap>>,
        cone: Option<OrderingCone>,
    ) -> Result<Self> {
        let first = groups
            .first()
            .and_then(|g| g.first())
            .ok_or_else(|| Error::InvariantViolation("form without members".into()))?;
        let (n, m) = (first.dim_in(), first.dim_out());
        for g in &groups {
            if g.is_empty() {
                return Err(Error::InvariantViolation("empty group".into()));
            }
            for a in g {
                check_dim(n, a.dim_in())?;
                check_dim(m, a.dim_out())?;
            }
        }
        if let Some(k) = &cone {
            check_dim(m, k.dim())?;
        }
        match kind {
            FormKind::Dc if groups.len() != 2 => {
                return Err(Error::InvariantViolation(
                    "dc form needs plus and minus".into(),
                ))
            }
            FormKind::MaxAffine if groups.len() != 1 => {
                return Err(Error::InvariantViolation(
                    "max-affine form has one group".into(),
                ))
            }
            FormKind::Common if groups.iter().any(|g| g.len() != groups[0].len()) => {
                return Err(Error::InvariantViolation(
                    "common family must be rectangular".into(),
                ))
            }
            _ => {}
        }
        Ok(CanonicalForm { kind, groups, cone })
    }

    pub fn dim_in(&self) -> usize {
        self.groups[0][0].dim_in()
    }

    pub fn dim_out(&self) -> usize {
        self.groups[0][0].dim_out()
    }

    /// Total number of affine maps.
    pub fn size(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn members(&self) -> impl Iterator<Item = &AffineMap> {
        self.groups.iter().flatten()
    }

    pub fn cone(&self) -> OrderingCone {
        self.cone
            .clone()
            .unwrap_or_else(|| OrderingCone::standard(self.dim_out()))
    }

    pub fn evaluator(&self) -> FormEvaluator {
        FormEvaluator::new(self)
    }

    pub fn eval(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim_in(), x.dim())?;
        Ok(self.evaluator().eval_unchecked(x))
    }
}

pub fn eval_form(form: &CanonicalForm, x: &Vector) -> Result<Vector> {
    form.eval(x)
}

type ScalarFn = (Vector, Rational);

/// Precomputed cone-coordinate rows of a form; each distinct row is
/// evaluated once per point.
#[derive(Clone, Debug)]
pub struct FormEvaluator {
    kind: FormKind,
    cone: OrderingCone,
    dim_in: usize,
    rows: Vec<Vec<ScalarFn>>,
    groups: Vec<Vec<Vec<usize>>>,
}

impl FormEvaluator {
    pub fn new(form: &CanonicalForm) -> Self {
        let cone = form.cone();
        let m = form.dim_out();
        let mut index: Vec<BTreeMap<ScalarFn, usize>> = vec![BTreeMap::new(); m];
        let mut rows: Vec<Vec<ScalarFn>> = vec![Vec::new(); m];
        let groups = form
            .groups
            .iter()
            .map(|g| {
                g.iter()
                    .map(|a| {
                        let c = cone.map_coords(a);
                        (0..m)
                            .map(|s| {
                                let key = (c.rows()[s].clone(), c.offset()[s].clone());
                                let next = rows[s].len();
                                *index[s].entry(key.clone()).or_insert_with(|| {
                                    rows[s].push(key);
                                    next
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        FormEvaluator {
            kind: form.kind,
            cone,
            dim_in: form.dim_in(),
            rows,
            groups,
        }
    }

    pub fn eval(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim_in, x.dim())?;
        Ok(self.eval_unchecked(x))
    }

    fn values(&self, x: &Vector) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|rs| rs.iter().map(|(a, b)| a.dot(x) + b).collect())
            .collect()
    }

    fn eval_unchecked(&self, x: &Vector) -> Vector {
        let vals = self.values(x);
        let c: Vector = (0..self.rows.len())
            .map(|s| {
                let v = |member: &Vec<usize>| vals[s][member[s]].clone();
                let sup = |g: &Vec<Vec<usize>>| g.iter().map(v).max().expect("nonempty group");
                let inf = |g: &Vec<Vec<usize>>| g.iter().map(v).min().expect("nonempty group");
                match self.kind {
                    FormKind::MaxAffine => self.groups.iter().map(sup).max(),
                    FormKind::MinMax => self.groups.iter().map(sup).min(),
                    FormKind::MaxMin | FormKind::Common => self.groups.iter().map(inf).max(),
                    FormKind::Dc => Some(sup(&self.groups[0]) - sup(&self.groups[1])),
                }
                .expect("nonempty form")
            })
            .collect();
        self.cone.from_coords(&c)
    }

    /// `inf_j sup_i A_ij` for a common family (the order opposite to
    /// [`FormEvaluator::eval`]).
    pub fn eval_transposed(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim_in, x.dim())?;
        if self.kind != FormKind::Common {
            return Err(Error::InvariantViolation(
                "transposed order needs a common family".into(),
            ));
        }
        let vals = self.values(x);
        let width = self.groups[0].len();
        let c: Vector = (0..self.rows.len())
            .map(|s| {
                (0..width)
                    .map(|j| {
                        self.groups
                            .iter()
                            .map(|g| vals[s][g[j][s]].clone())
                            .max()
                            .expect("nonempty")
                    })
                    .min()
                    .expect("nonempty")
            })
            .collect();
        Ok(self.cone.from_coords(&c))
    }
}

/// Distinct scalar pieces of one cone coordinate and, per solid cell, the
/// index of the piece living there.
#[derive(Clone, Debug)]
struct Coordinate {
    funcs: Vec<ScalarFn>,
    own: Vec<usize>,
}

/// Shares the solid partition (and its LP-heavy refinement) between the
/// forms of one map.
#[derive(Clone, Debug)]
pub struct FormBuilder {
    dim_in: usize,
    dim_out: usize,
    cone: OrderingCone,
    limits: FormLimits,
    cells: Vec<ConvexPolyhedron>,
    coords: Vec<Coordinate>,
}

fn check_size(size: usize, limits: &FormLimits) -> Result<()> {
    if size > limits.max_maps {
        Err(Error::FormTooLarge {
            size,
            limit: limits.max_maps,
        })
    } else {
        Ok(())
    }
}

fn sum_fn(a: &ScalarFn, b: &ScalarFn) -> ScalarFn {
    (a.0.add(&b.0), &a.1 + &b.1)
}

/// Odometer over one choice per list.
fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |item| {
                    let mut next = prefix.clone();
                    next.push(item.clone());
                    next
                })
            })
            .collect();
    }
    out
}

/// Keeps the groups that are not strict supersets of another group.
fn drop_supersets(groups: BTreeSet<Vec<usize>>) -> Vec<Vec<usize>> {
    let sets: Vec<BTreeSet<usize>> = groups.iter().map(|g| g.iter().copied().collect()).collect();
    groups
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !sets
                .iter()
                .enumerate()
                .any(|(j, t)| j != *i && t.len() < sets[*i].len() && t.is_subset(&sets[*i]))
        })
        .map(|(_, g)| g.clone())
        .collect()
}

impl FormBuilder {
    pub fn new(p: &PwaMap, cone: &OrderingCone) -> Result<Self> {
        check_dim(p.dim_out(), cone.dim())?;
        let (cells, pieces) = p.solid_partition()?;
        if cells.is_empty() {
            return Err(Error::InvariantViolation(
                "cells do not cover the space".into(),
            ));
        }
        let in_coords: Vec<AffineMap> = pieces.iter().map(|a| cone.map_coords(a)).collect();
        let coords = (0..p.dim_out())
            .map(|s| {
                let mut index = BTreeMap::new();
                let mut funcs = Vec::new();
                let own = in_coords
                    .iter()
                    .map(|a| {
                        let key = (a.rows()[s].clone(), a.offset()[s].clone());
                        *index.entry(key.clone()).or_insert_with(|| {
                            funcs.push(key);
                            funcs.len() - 1
                        })
                    })
                    .collect();
                Coordinate { funcs, own }
            })
            .collect();
        Ok(FormBuilder {
            dim_in: p.dim_in(),
            dim_out: p.dim_out(),
            cone: cone.clone(),
            limits: FormLimits::default(),
            cells,
            coords,
        })
    }

    pub fn with_limits(mut self, limits: FormLimits) -> Self {
        self.limits = limits;
        self
    }

    /// Cells of the solid partition the forms are built on.
    pub fn cells(&self) -> &[ConvexPolyhedron] {
        &self.cells
    }

    /// Sign of `f_u − f_own` over cell `i`: `Some(true)` if `≥ 0` throughout
    /// (for `lower`) or `≤ 0` throughout (otherwise).
    fn dominates(&self, s: usize, i: usize, u: usize, lower: bool) -> bool {
        let c = &self.coords[s];
        let own = c.own[i];
        if u == own {
            return true;
        }
        let a = c.funcs[u].0.sub(&c.funcs[own].0);
        let b = &c.funcs[u].1 - &c.funcs[own].1;
        if a.is_zero() {
            return if lower {
                !b.is_negative()
            } else {
                !b.is_positive()
            };
        }
        let outcome = if lower {
            self.cells[i].minimize(&a)
        } else {
            self.cells[i].maximize(&a)
        };
        match outcome {
            LpOutcome::Optimal { value, .. } => {
                let v = value + b;
                if lower {
                    !v.is_negative()
                } else {
                    !v.is_positive()
                }
            }
            LpOutcome::Unbounded => false,
            LpOutcome::Infeasible => true,
        }
    }

    /// Each coordinate equals the max of its own pieces.
    pub fn is_convex(&self) -> bool {
        (0..self.dim_out).all(|s| {
            (0..self.cells.len())
                .all(|j| (0..self.coords[s].funcs.len()).all(|u| self.dominates(s, j, u, false)))
        })
    }

    /// Per cell `i`: `S_i = {u : f_u ≥ f_own on M_i}` (max-min) or
    /// `T_i = {u : f_u ≤ f_own on M_i}` (min-max), deduplicated, with groups
    /// that strictly contain another group dropped.
    fn scalar_groups(&self, s: usize, orientation: Orientation) -> Vec<Vec<usize>> {
        let lower = orientation == Orientation::MaxMin;
        let groups: BTreeSet<Vec<usize>> = (0..self.cells.len())
            .map(|i| {
                (0..self.coords[s].funcs.len())
                    .filter(|&u| self.dominates(s, i, u, lower))
                    .collect()
            })
            .collect();
        drop_supersets(groups)
    }

    fn vector_map(&self, parts: &[ScalarFn]) -> AffineMap {
        let rows = parts.iter().map(|(a, _)| a.clone()).collect();
        let offset = parts.iter().map(|(_, b)| b.clone()).collect();
        let map = AffineMap::new(rows, offset).expect("at least one coordinate");
        self.cone.map_from_coords(&map)
    }

    fn form(&self, kind: FormKind, mut groups: Vec<Vec<AffineMap>>) -> Result<CanonicalForm> {
        if kind != FormKind::Common {
            for g in &mut groups {
                g.sort();
                g.dedup();
            }
        }
        if matches!(kind, FormKind::MinMax | FormKind::MaxMin) {
            groups.sort();
            groups.dedup();
        }
        let cone = (!self.cone.is_standard()).then(|| self.cone.clone());
        CanonicalForm::new(kind, groups, cone)
    }

    pub fn max_affine(&self) -> Result<CanonicalForm> {
        if !self.is_convex() {
            return Err(Error::NotConvex);
        }
        let per: Vec<Vec<ScalarFn>> = self.coords.iter().map(|c| c.funcs.clone()).collect();
        let size = per
            .iter()
            .map(Vec::len)
            .try_fold(1usize, usize::checked_mul);
        check_size(size.unwrap_or(usize::MAX), &self.limits)?;
        let members = product(&per).iter().map(|p| self.vector_map(p)).collect();
        self.form(FormKind::MaxAffine, vec![members])
    }

    pub fn min_max(&self, orientation: Orientation) -> Result<CanonicalForm> {
        let per: Vec<Vec<Vec<ScalarFn>>> = (0..self.dim_out)
            .map(|s| {
                self.scalar_groups(s, orientation)
                    .into_iter()
                    .map(|g| {
                        g.into_iter()
                            .map(|u| self.coords[s].funcs[u].clone())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        // Σ over group multi-indices of ∏ group sizes = ∏ over coordinates of
        // the total group sizes
        let size = per
            .iter()
            .map(|gs| gs.iter().map(Vec::len).sum::<usize>())
            .try_fold(1usize, usize::checked_mul);
        check_size(size.unwrap_or(usize::MAX), &self.limits)?;
        let groups = product(&per)
            .iter()
            .map(|choice| product(choice).iter().map(|p| self.vector_map(p)).collect())
            .collect();
        let kind = match orientation {
            Orientation::MinMax => FormKind::MinMax,
            Orientation::MaxMin => FormKind::MaxMin,
        };
        self.form(kind, groups)
    }

    /// Distinct sums `Σ_c f_{u_c}`, one member per group.
    fn sums(&self, groups: &[Vec<ScalarFn>]) -> Result<Vec<ScalarFn>> {
        let zero = (Vector::zeros(self.dim_in), Rational::zero());
        let mut acc: BTreeSet<ScalarFn> = BTreeSet::from([zero]);
        for g in groups {
            check_size(acc.len().saturating_mul(g.len()), &self.limits)?;
            acc = acc
                .iter()
                .flat_map(|a| g.iter().map(move |f| sum_fn(a, f)))
                .collect();
        }
        Ok(acc.into_iter().collect())
    }

    /// Per coordinate `p = Σ_c G_c − max_i Σ_{c≠i} G_c` with the convex
    /// groups `G_c = max T_c`, then combined across coordinates.
    fn dc_parts(&self) -> Result<(Vec<AffineMap>, Vec<AffineMap>)> {
        let mut plus = Vec::with_capacity(self.dim_out);
        let mut minus = Vec::with_capacity(self.dim_out);
        for s in 0..self.dim_out {
            let groups: Vec<Vec<ScalarFn>> = self
                .scalar_groups(s, Orientation::MinMax)
                .into_iter()
                .map(|g| {
                    g.into_iter()
                        .map(|u| self.coords[s].funcs[u].clone())
                        .collect()
                })
                .collect();
            plus.push(self.sums(&groups)?);
            let mut rest: BTreeSet<ScalarFn> = BTreeSet::new();
            for i in 0..groups.len() {
                let others: Vec<Vec<ScalarFn>> = groups
                    .iter()
                    .enumerate()
                    .filter(|(c, _)| *c != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                rest.extend(self.sums(&others)?);
                check_size(rest.len(), &self.limits)?;
            }
            minus.push(rest.into_iter().collect::<Vec<_>>());
        }
        let count = |v: &Vec<Vec<ScalarFn>>| {
            v.iter()
                .map(Vec::len)
                .try_fold(1usize, usize::checked_mul)
                .unwrap_or(usize::MAX)
        };
        check_size(count(&plus).saturating_add(count(&minus)), &self.limits)?;
        let plus = product(&plus).iter().map(|p| self.vector_map(p)).collect();
        let minus = product(&minus).iter().map(|p| self.vector_map(p)).collect();
        Ok((plus, minus))
    }

    pub fn dc(&self) -> Result<CanonicalForm> {
        let (plus, minus) = self.dc_parts()?;
        self.form(FormKind::Dc, vec![plus, minus])
    }

    pub fn common(&self) -> Result<CanonicalForm> {
        let (mut plus, mut minus) = self.dc_parts()?;
        plus.sort();
        minus.sort();
        check_size(plus.len().saturating_mul(minus.len()), &self.limits)?;
        let groups = plus
            .iter()
            .map(|c| minus.iter().map(|d| c.sub(d)).collect())
            .collect();
        self.form(FormKind::Common, groups)
    }
}

pub fn is_convex(p: &PwaMap, cone: &OrderingCone) -> Result<bool> {
    Ok(FormBuilder::new(p, cone)?.is_convex())
}

pub fn convex_to_max_form(p: &PwaMap, cone: &OrderingCone) -> Result<CanonicalForm> {
    FormBuilder::new(p, cone)?.max_affine()
}

pub fn to_min_max(
    p: &PwaMap,
    cone: &OrderingCone,
    orientation: Orientation,
) -> Result<CanonicalForm> {
    FormBuilder::new(p, cone)?.min_max(orientation)
}

pub fn to_dc(p: &PwaMap, cone: &OrderingCone) -> Result<CanonicalForm> {
    FormBuilder::new(p, cone)?.dc()
}

pub fn to_common_family(p: &PwaMap, cone: &OrderingCone) -> Result<CanonicalForm> {
    FormBuilder::new(p, cone)?.common()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwa::tests::{example_max, example_min};
    use crate::pwa::{from_coordinates, lattice_inf, lattice_sup};

    fn pt(s: &str) -> Vector {
        s.parse().unwrap()
    }

    fn lin(a: i64) -> PwaMap {
        PwaMap::affine(AffineMap::from_integers(&[&[a]], &[0]))
    }

    fn std1() -> OrderingCone {
        OrderingCone::standard(1)
    }

    fn abs() -> PwaMap {
        lattice_sup(&lin(1), &lin(-1), &std1()).unwrap()
    }

    fn neg_abs() -> PwaMap {
        lattice_inf(&lin(1), &lin(-1), &std1()).unwrap()
    }

    fn assert_agrees(form: &CanonicalForm, p: &PwaMap, points: &[&str]) {
        let ev = form.evaluator();
        for x in points {
            let v = pt(x);
            assert_eq!(
                ev.eval(&v).unwrap(),
                p.eval(&v).unwrap(),
                "{:?} at {x}",
                form.kind
            );
        }
    }

    #[test]
    fn convexity() {
        assert!(is_convex(&abs(), &std1()).unwrap());
        assert!(!is_convex(&neg_abs(), &std1()).unwrap());
        assert!(is_convex(&example_max(), &std1()).unwrap());
        assert!(!is_convex(&example_min(), &std1()).unwrap());
    }

    #[test]
    fn max_form_of_abs() {
        let f = convex_to_max_form(&abs(), &std1()).unwrap();
        assert_eq!(f.groups.len(), 1);
        assert_eq!(
            f.groups[0],
            vec![
                AffineMap::from_integers(&[&[-1]], &[0]),
                AffineMap::from_integers(&[&[1]], &[0])
            ]
        );
        assert_eq!(
            convex_to_max_form(&neg_abs(), &std1()),
            Err(Error::NotConvex)
        );
        let single = convex_to_max_form(&lin(3), &std1()).unwrap();
        assert_eq!(single.size(), 1);
    }

    #[test]
    fn min_max_of_abs() {
        let f = to_min_max(&abs(), &std1(), Orientation::MaxMin).unwrap();
        assert_eq!(f.groups.len(), 2);
        assert!(f.groups.iter().all(|g| g.len() == 1));
        let g = to_min_max(&abs(), &std1(), Orientation::MinMax).unwrap();
        assert_eq!(g.eval(&pt("-2")).unwrap(), pt("2"));
        assert_agrees(&f, &abs(), &["-2", "0", "1/3"]);
        let affine = to_min_max(&lin(2), &std1(), Orientation::MinMax).unwrap();
        assert_eq!(affine.size(), 1);
    }

    #[test]
    fn dc_of_negative_abs() {
        let f = to_dc(&neg_abs(), &std1()).unwrap();
        assert_eq!(f.groups[0], vec![AffineMap::from_integers(&[&[0]], &[0])]);
        assert_eq!(f.groups[1].len(), 2);
        assert_eq!(f.eval(&pt("1")).unwrap(), pt("-1"));
        let convex = to_dc(&abs(), &std1()).unwrap();
        assert_eq!(
            convex.groups[1],
            vec![AffineMap::from_integers(&[&[0]], &[0])]
        );
    }

    #[test]
    fn common_family_both_orders() {
        let f = to_common_family(&neg_abs(), &std1()).unwrap();
        assert_eq!(f.size(), 2);
        let ev = f.evaluator();
        for x in ["-3", "0", "5/2"] {
            let v = pt(x);
            let want = neg_abs().eval(&v).unwrap();
            assert_eq!(ev.eval(&v).unwrap(), want);
            assert_eq!(ev.eval_transposed(&v).unwrap(), want);
        }
        let single = to_common_family(&lin(-4), &std1()).unwrap();
        assert_eq!(single.size(), 1);
    }

    #[test]
    fn vector_forms_with_skewed_cone() {
        let cone = OrderingCone::from_generators(&[pt("1,1"), pt("0,1")]).unwrap();
        let p = from_coordinates(&[example_max(), example_min()], &cone).unwrap();
        let pts = ["1,2", "-3,1/2", "0,0", "7/2,-1"];
        let b = FormBuilder::new(&p, &cone).unwrap();
        for o in [Orientation::MinMax, Orientation::MaxMin] {
            assert_agrees(&b.min_max(o).unwrap(), &p, &pts);
        }
        assert_agrees(&b.dc().unwrap(), &p, &pts);
        let c = b.common().unwrap();
        assert_agrees(&c, &p, &pts);
        for x in pts {
            assert_eq!(
                c.evaluator().eval_transposed(&pt(x)).unwrap(),
                p.eval(&pt(x)).unwrap()
            );
        }
        assert!(!b.is_convex());
    }

    #[test]
    fn size_guard() {
        let b = FormBuilder::new(&abs(), &std1())
            .unwrap()
            .with_limits(FormLimits { max_maps: 1 });
        assert!(matches!(
            b.min_max(Orientation::MinMax),
            Err(Error::FormTooLarge { .. })
        ));
    }

    #[test]
    fn serde_shape() {
        let f = to_min_max(&abs(), &std1(), Orientation::MinMax).unwrap();
        let json = serde_json::to_value(&f).unwrap();
        assert_eq!(json["kind"], "minmax");
        assert!(json["cone"].is_null());
        let back: CanonicalForm = serde_json::from_value(json).unwrap();
        assert_eq!(back, f);
    }
}

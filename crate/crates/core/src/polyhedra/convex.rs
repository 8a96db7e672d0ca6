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

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{
    rank, solve_lp_unchecked, strict_feasible_point, AffineMap, Direction, Halfspace, LpOutcome,
    Rational, Vector,
};

// rows `a·x = β` of an affine hull
type Equalities = Vec<(Vector, Rational)>;

/// `{x : a_j·x ≤ α_j, j = 1..k}`; no constraints means the whole space.
///
/// Redundant constraints are allowed and kept as given.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPolyhedron")]
pub struct ConvexPolyhedron {
    dim: usize,
    halfspaces: Vec<Halfspace>,
}

#[derive(Deserialize)]
struct RawPolyhedron {
    dim: usize,
    halfspaces: Vec<Halfspace>,
}

impl TryFrom<RawPolyhedron> for ConvexPolyhedron {
    type Error = Error;
    fn try_from(raw: RawPolyhedron) -> Result<Self> {
        ConvexPolyhedron::new(raw.dim, raw.halfspaces)
    }
}

/// Implicit equalities of a polyhedron and the dimension of its affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHull {
    pub equalities: Vec<(Vector, Rational)>,
    pub dimension: usize,
    /// Per constraint: does it hold with equality on the whole polyhedron?
    pub implicit: Vec<bool>,
}

impl ConvexPolyhedron {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        for h in &halfspaces {
            check_dim(dim, h.dim())?;
        }
        Ok(ConvexPolyhedron { dim, halfspaces })
    }

    pub(crate) fn new_unchecked(dim: usize, halfspaces: Vec<Halfspace>) -> Self {
        debug_assert!(halfspaces.iter().all(|h| h.dim() == dim));
        ConvexPolyhedron { dim, halfspaces }
    }

    pub fn whole(dim: usize) -> Self {
        ConvexPolyhedron {
            dim,
            halfspaces: Vec::new(),
        }
    }

    /// Convenience constructor from integer rows `(a, α)`.
    pub fn from_integers(dim: usize, rows: &[(&[i64], i64)]) -> Self {
        let hs = rows
            .iter()
            .map(|(a, b)| Halfspace::from_integers(a, *b))
            .collect();
        Self::new(dim, hs).expect("consistent integer rows")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn into_halfspaces(self) -> Vec<Halfspace> {
        self.halfspaces
    }

    pub fn is_whole_space(&self) -> bool {
        self.halfspaces.iter().all(Halfspace::is_whole_space)
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        Ok(self.contains_unchecked(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &Vector) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    pub fn optimize(&self, objective: &Vector, direction: Direction) -> Result<LpOutcome> {
        check_dim(self.dim, objective.dim())?;
        Ok(solve_lp_unchecked(objective, &self.halfspaces, direction))
    }

    pub(crate) fn maximize(&self, objective: &Vector) -> LpOutcome {
        solve_lp_unchecked(objective, &self.halfspaces, Direction::Maximize)
    }

    pub(crate) fn minimize(&self, objective: &Vector) -> LpOutcome {
        solve_lp_unchecked(objective, &self.halfspaces, Direction::Minimize)
    }

    pub fn feasible_point(&self) -> Option<Vector> {
        match self.maximize(&Vector::zeros(self.dim)) {
            LpOutcome::Optimal { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        if self.halfspaces.is_empty() {
            return false;
        }
        self.feasible_point().is_none()
    }

    /// Implicit equalities via repeated slack maximization: every round either
    /// proves some remaining constraint can be strict or shows all remaining
    /// ones are tight on the whole polyhedron.
    pub fn affine_hull(&self) -> Result<AffineHull> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let n = self.dim;
        let mut implicit = vec![false; self.halfspaces.len()];
        let mut open: Vec<usize> = (0..self.halfspaces.len())
            .filter(|&i| {
                let h = &self.halfspaces[i];
                !h.is_degenerate()
            })
            .collect();
        while !open.is_empty() {
            let width = n + open.len();
            let mut rows = Vec::with_capacity(self.halfspaces.len() + 2 * open.len());
            let mut slack_of = vec![None; self.halfspaces.len()];
            for (k, &i) in open.iter().enumerate() {
                slack_of[i] = Some(k);
            }
            for (i, h) in self.halfspaces.iter().enumerate() {
                let mut a = h.normal.entries().to_vec();
                a.resize(width, Rational::zero());
                if let Some(k) = slack_of[i] {
                    a[n + k] = Rational::one();
                }
                rows.push(Halfspace::new(Vector::new(a), h.bound.clone()));
            }
            for k in 0..open.len() {
                rows.push(Halfspace::new(Vector::unit(width, n + k), Rational::one()));
                rows.push(Halfspace::new(
                    Vector::unit(width, n + k).neg(),
                    Rational::zero(),
                ));
            }
            let mut objective = vec![Rational::zero(); width];
            for v in objective[n..].iter_mut() {
                *v = Rational::one();
            }
            let LpOutcome::Optimal { value, witness } =
                solve_lp_unchecked(&Vector::new(objective), &rows, Direction::Maximize)
            else {
                return Err(Error::InvariantViolation("bounded slack LP".into()));
            };
            if value.is_zero() {
                for &i in &open {
                    implicit[i] = true;
                }
                break;
            }
            open = open
                .iter()
                .enumerate()
                .filter(|(k, _)| witness[n + k].is_zero())
                .map(|(_, &i)| i)
                .collect();
        }
        let equalities: Vec<(Vector, Rational)> = self
            .halfspaces
            .iter()
            .zip(&implicit)
            .filter(|(_, &imp)| imp)
            .map(|(h, _)| (h.normal.clone(), h.bound.clone()))
            .collect();
        let normals: Vec<Vector> = equalities.iter().map(|(a, _)| a.clone()).collect();
        let dimension = n - rank(&normals);
        Ok(AffineHull {
            equalities,
            dimension,
            implicit,
        })
    }

    /// Nonempty interior, i.e. `dim aff P = dim X`.
    pub fn is_solid(&self) -> bool {
        self.interior_point().is_some()
    }

    /// A point where every constraint is strict.
    pub fn interior_point(&self) -> Option<Vector> {
        let strict: Vec<Halfspace> = self
            .halfspaces
            .iter()
            .filter(|h| !h.is_whole_space())
            .cloned()
            .collect();
        strict_feasible_point(self.dim, &strict, &[], &[])
    }

    pub fn relative_interior_point(&self) -> Option<Vector> {
        let hull = self.affine_hull().ok()?;
        let strict: Vec<Halfspace> = self
            .halfspaces
            .iter()
            .zip(&hull.implicit)
            .filter(|(h, &imp)| !imp && !h.is_degenerate())
            .map(|(h, _)| h.clone())
            .collect();
        strict_feasible_point(self.dim, &strict, &[], &hull.equalities)
    }

    fn split_by_hull(&self) -> Result<(Vec<Halfspace>, Equalities)> {
        let hull = self.affine_hull()?;
        let strict = self
            .halfspaces
            .iter()
            .zip(&hull.implicit)
            .filter(|(h, &imp)| !imp && !h.is_degenerate())
            .map(|(h, _)| h.clone())
            .collect();
        Ok((strict, hull.equalities))
    }

    /// `ri P ∩ ri Q ≠ ∅`.
    pub fn relative_interiors_intersect(&self, other: &ConvexPolyhedron) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        let (mut strict, mut eqs) = self.split_by_hull()?;
        let (s2, e2) = other.split_by_hull()?;
        strict.extend(s2);
        eqs.extend(e2);
        Ok(strict_feasible_point(self.dim, &strict, &[], &eqs).is_some())
    }

    pub fn intersect(&self, other: &ConvexPolyhedron) -> Result<ConvexPolyhedron> {
        check_dim(self.dim, other.dim)?;
        Ok(self.intersect_unchecked(other))
    }

    pub(crate) fn intersect_unchecked(&self, other: &ConvexPolyhedron) -> ConvexPolyhedron {
        let mut halfspaces = self.halfspaces.clone();
        halfspaces.extend(other.halfspaces.iter().cloned());
        ConvexPolyhedron::new_unchecked(self.dim, halfspaces)
    }

    pub fn with_halfspace(&self, h: Halfspace) -> Result<ConvexPolyhedron> {
        check_dim(self.dim, h.dim())?;
        let mut out = self.clone();
        out.halfspaces.push(h);
        Ok(out)
    }

    /// `{x : map(x) ∈ self}`.
    pub fn preimage(&self, map: &AffineMap) -> Result<ConvexPolyhedron> {
        check_dim(self.dim, map.dim_out())?;
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| {
                let normal: Vector = (0..map.dim_in())
                    .map(|j| {
                        h.normal
                            .iter()
                            .zip(map.rows())
                            .filter(|(a, _)| !a.is_zero())
                            .map(|(a, r)| a * &r[j])
                            .sum()
                    })
                    .collect();
                Halfspace::new(normal, &h.bound - h.normal.dot(map.offset()))
            })
            .collect();
        Ok(ConvexPolyhedron::new_unchecked(map.dim_in(), halfspaces))
    }

    /// `max h.normal over P ≤ h.bound`; vacuously true when `P` is empty.
    pub fn contained_in_halfspace(&self, h: &Halfspace) -> bool {
        debug_assert_eq!(self.dim, h.dim());
        if h.is_degenerate() {
            return !h.bound.is_negative() || self.is_empty();
        }
        if self.halfspaces.contains(h) {
            return true;
        }
        match self.maximize(&h.normal) {
            LpOutcome::Infeasible => true,
            LpOutcome::Unbounded => false,
            LpOutcome::Optimal { value, .. } => value <= h.bound,
        }
    }

    pub fn is_subset_of(&self, other: &ConvexPolyhedron) -> bool {
        other
            .halfspaces
            .iter()
            .all(|h| self.contained_in_halfspace(h))
    }

    /// Set equality by mutual inclusion.
    pub fn set_eq(&self, other: &ConvexPolyhedron) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Drops every halfspace implied by the others (first to last), along
    /// with whole-space rows and exact duplicates.
    pub fn without_redundancy(&self) -> ConvexPolyhedron {
        let mut seen = BTreeSet::new();
        let mut kept: Vec<Halfspace> = self
            .halfspaces
            .iter()
            .filter(|h| !h.is_whole_space())
            .filter(|h| seen.insert((*h).clone()))
            .cloned()
            .collect();
        let mut i = 0;
        while i < kept.len() {
            let h = kept.remove(i);
            let rest = ConvexPolyhedron::new_unchecked(self.dim, kept.clone());
            if rest.contained_in_halfspace(&h) {
                continue;
            }
            kept.insert(i, h);
            i += 1;
        }
        ConvexPolyhedron::new_unchecked(self.dim, kept)
    }

    /// `tidy`, followed by redundancy removal once the row count gets large.
    pub fn simplified(&self) -> ConvexPolyhedron {
        let t = self.tidy();
        if t.halfspaces.len() > 2 * self.dim + 2 {
            t.without_redundancy()
        } else {
            t
        }
    }

    /// Embeds into `X × Y` as `P × Y` (new coordinates appended).
    pub fn lift(&self, extra: usize) -> ConvexPolyhedron {
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| Halfspace::new(h.normal.concat(&Vector::zeros(extra)), h.bound.clone()))
            .collect();
        ConvexPolyhedron::new_unchecked(self.dim + extra, halfspaces)
    }

    /// Fourier–Motzkin elimination of coordinate `axis`; the result lives in
    /// dimension `dim - 1` and is the orthogonal projection of `self`.
    pub fn project_out(&self, axis: usize) -> ConvexPolyhedron {
        assert!(axis < self.dim);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut out = Vec::new();
        let drop_axis = |a: &Vector| -> Vector {
            a.iter()
                .enumerate()
                .filter(|(j, _)| *j != axis)
                .map(|(_, v)| v.clone())
                .collect()
        };
        for h in &self.halfspaces {
            let c = &h.normal[axis];
            if c.is_zero() {
                out.push(Halfspace::new(drop_axis(&h.normal), h.bound.clone()));
            } else {
                // scale so the eliminated coefficient is ±1
                let s = c.abs().recip();
                let scaled = Halfspace::new(h.normal.scale(&s), &h.bound * &s);
                if c.is_positive() {
                    pos.push(scaled);
                } else {
                    neg.push(scaled);
                }
            }
        }
        for p in &pos {
            for q in &neg {
                let normal = drop_axis(&p.normal.add(&q.normal));
                out.push(Halfspace::new(normal, &p.bound + &q.bound));
            }
        }
        let projected = ConvexPolyhedron::new_unchecked(self.dim - 1, out).tidy();
        if projected.halfspaces.len() > 4 * self.dim + 4 {
            projected.without_redundancy()
        } else {
            projected
        }
    }

    /// Cheap syntactic cleanup: normalizes rows to a leading `±1`, drops
    /// whole-space rows, keeps the tightest of parallel rows. An infeasible
    /// degenerate row collapses the system to `0 ≤ -1`.
    pub fn tidy(&self) -> ConvexPolyhedron {
        let mut best: std::collections::BTreeMap<Vector, Rational> = Default::default();
        for h in &self.halfspaces {
            if h.is_degenerate() {
                if h.bound.is_negative() {
                    return ConvexPolyhedron::new_unchecked(
                        self.dim,
                        vec![Halfspace::new(Vector::zeros(self.dim), -Rational::one())],
                    );
                }
                continue;
            }
            let (normal, factor) = h.normal.normalized_leading();
            let bound = &h.bound * &factor;
            best.entry(normal)
                .and_modify(|b| {
                    if bound < *b {
                        *b = bound.clone();
                    }
                })
                .or_insert(bound);
        }
        let halfspaces = best
            .into_iter()
            .map(|(normal, bound)| Halfspace::new(normal, bound))
            .collect();
        ConvexPolyhedron::new_unchecked(self.dim, halfspaces)
    }
}

impl fmt::Debug for ConvexPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.halfspaces).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vector {
        Vector::from_integers(x)
    }

    #[test]
    fn membership() {
        let whole = ConvexPolyhedron::whole(2);
        assert!(whole.contains(&v(&[5, -7])).unwrap());
        let m1 = ConvexPolyhedron::from_integers(2, &[(&[1, -1], 0)]);
        assert!(m1.contains(&v(&[0, 1])).unwrap());
        assert!(!m1.contains(&v(&[1, 0])).unwrap());
        let empty = ConvexPolyhedron::from_integers(1, &[(&[1], 0), (&[-1], -1)]);
        assert!(!empty.contains(&v(&[0])).unwrap());
        assert!(empty.is_empty());
        assert!(!whole.is_empty());
        assert!(m1.contains(&v(&[0])).is_err());
    }

    #[test]
    fn affine_hulls() {
        let h = ConvexPolyhedron::whole(2).affine_hull().unwrap();
        assert!(h.equalities.is_empty());
        assert_eq!(h.dimension, 2);

        let point = ConvexPolyhedron::from_integers(1, &[(&[1], 0), (&[-1], 0)]);
        let h = point.affine_hull().unwrap();
        assert_eq!(h.dimension, 0);
        assert_eq!(h.equalities.len(), 2);

        let segment = ConvexPolyhedron::from_integers(
            2,
            &[(&[1, 0], 1), (&[-1, 0], 0), (&[0, 1], 0), (&[0, -1], 0)],
        );
        let h = segment.affine_hull().unwrap();
        assert_eq!(h.dimension, 1);
        assert_eq!(h.implicit, vec![false, false, true, true]);

        let empty = ConvexPolyhedron::from_integers(1, &[(&[1], 0), (&[-1], -1)]);
        assert_eq!(empty.affine_hull(), Err(Error::EmptyPolyhedron));
    }

    #[test]
    fn relative_interiors() {
        let whole = ConvexPolyhedron::whole(2);
        assert!(whole.relative_interiors_intersect(&whole).unwrap());
        let left = ConvexPolyhedron::from_integers(1, &[(&[1], 0)]);
        let right = ConvexPolyhedron::from_integers(1, &[(&[-1], 0)]);
        assert!(!left.relative_interiors_intersect(&right).unwrap());
        let origin = left.intersect(&right).unwrap();
        assert!(origin.relative_interiors_intersect(&origin).unwrap());
        assert!(!origin.relative_interiors_intersect(&left).unwrap());
    }

    #[test]
    fn diagonal_intersection() {
        let m1 = ConvexPolyhedron::from_integers(2, &[(&[1, -1], 0)]);
        let m2 = ConvexPolyhedron::from_integers(2, &[(&[-1, 1], 0)]);
        let diag = m1.intersect(&m2).unwrap();
        assert!(diag.contains(&v(&[3, 3])).unwrap());
        assert!(!diag.contains(&v(&[3, 2])).unwrap());
        assert_eq!(diag.affine_hull().unwrap().dimension, 1);
        assert!(m1
            .intersect(&ConvexPolyhedron::whole(2))
            .unwrap()
            .set_eq(&m1));
    }

    #[test]
    fn preimage_shift() {
        let q = ConvexPolyhedron::from_integers(1, &[(&[1], 0)]);
        let shift = AffineMap::from_integers(&[&[1]], &[1]);
        let p = q.preimage(&shift).unwrap();
        assert_eq!(p.halfspaces(), &[Halfspace::from_integers(&[1], -1)]);
        assert_eq!(q.preimage(&AffineMap::identity(1)).unwrap(), q);
    }

    #[test]
    fn halfspace_containment() {
        let empty = ConvexPolyhedron::from_integers(1, &[(&[1], 0), (&[-1], -1)]);
        assert!(empty.contained_in_halfspace(&Halfspace::from_integers(&[1], -100)));
        let p = ConvexPolyhedron::from_integers(1, &[(&[1], 1)]);
        assert!(p.contained_in_halfspace(&Halfspace::from_integers(&[1], 2)));
        assert!(
            !ConvexPolyhedron::whole(1).contained_in_halfspace(&Halfspace::from_integers(&[1], 2))
        );
    }

    #[test]
    fn redundancy_removal() {
        let p = ConvexPolyhedron::from_integers(1, &[(&[1], 1), (&[1], 2), (&[0], 4), (&[-1], 0)]);
        let q = p.without_redundancy();
        assert_eq!(q.halfspaces().len(), 2);
        assert!(q.set_eq(&p));
    }

    #[test]
    fn fourier_motzkin_triangle() {
        // triangle x >= 0, y >= 0, x + y <= 1 projected onto x: [0, 1]
        let t = ConvexPolyhedron::from_integers(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1)]);
        let px = t.project_out(1);
        let expect = ConvexPolyhedron::from_integers(1, &[(&[-1], 0), (&[1], 1)]);
        assert!(px.set_eq(&expect));
    }

    #[test]
    fn fourier_motzkin_detects_emptiness() {
        let e = ConvexPolyhedron::from_integers(2, &[(&[0, 1], 0), (&[0, -1], -1)]);
        assert!(e.project_out(1).is_empty());
    }
}

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

//! Piecewise affine maps on a polyhedral covering of the whole input space.

mod algebra;
mod cone;
mod forms;
mod geometric;

use serde::{Deserialize, Serialize};

use crate::covering::{self, Covering, Refinement};
use crate::error::{check_dim, Error, Result};
use crate::geometry::{AffineMap, LpOutcome, Vector};
use crate::polyhedra::ConvexPolyhedron;

pub use algebra::{
    compose, coordinates, from_coordinates, lattice_inf, lattice_sup, linear_combine,
};
pub use cone::OrderingCone;
pub use forms::{
    convex_to_max_form, eval_form, is_convex, to_common_family, to_dc, to_min_max, CanonicalForm,
    FormBuilder, FormEvaluator, FormKind, FormLimits, Orientation,
};
pub use geometric::{epigraph, from_graph, graph, standard_cone_halfspaces, EpiSide};

/// `P(x) = A_i(x)` for `x ∈ M_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPwaMap", into = "RawPwaMap")]
pub struct PwaMap {
    dim_in: usize,
    dim_out: usize,
    cells: Vec<ConvexPolyhedron>,
    pieces: Vec<AffineMap>,
}

#[derive(Serialize, Deserialize)]
struct RawPwaMap {
    dim_in: usize,
    dim_out: usize,
    cells: Vec<ConvexPolyhedron>,
    pieces: Vec<AffineMap>,
}

impl TryFrom<RawPwaMap> for PwaMap {
    type Error = Error;

    fn try_from(raw: RawPwaMap) -> Result<Self> {
        let p = PwaMap::new(raw.cells, raw.pieces)?;
        check_dim(raw.dim_in, p.dim_in)?;
        check_dim(raw.dim_out, p.dim_out)?;
        Ok(p)
    }
}

impl From<PwaMap> for RawPwaMap {
    fn from(p: PwaMap) -> Self {
        RawPwaMap {
            dim_in: p.dim_in,
            dim_out: p.dim_out,
            cells: p.cells,
            pieces: p.pieces,
        }
    }
}

/// Outcome of [`PwaMap::validate`]. Cell indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub covers: bool,
    pub conflict: Option<Conflict>,
}

/// Two overlapping cells whose pieces differ somewhere on the overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub cells: (usize, usize),
    pub coordinate: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.covers && self.conflict.is_none()
    }
}

impl PwaMap {
    /// Structural checks only; see [`PwaMap::validate`] for the semantic ones.
    pub fn new(cells: Vec<ConvexPolyhedron>, pieces: Vec<AffineMap>) -> Result<Self> {
        if cells.is_empty() || cells.len() != pieces.len() {
            return Err(Error::InvariantViolation(format!(
                "{} cells but {} pieces",
                cells.len(),
                pieces.len()
            )));
        }
        let dim_in = pieces[0].dim_in();
        let dim_out = pieces[0].dim_out();
        for (c, a) in cells.iter().zip(&pieces) {
            check_dim(dim_in, c.dim())?;
            check_dim(dim_in, a.dim_in())?;
            check_dim(dim_out, a.dim_out())?;
        }
        Ok(PwaMap {
            dim_in,
            dim_out,
            cells,
            pieces,
        })
    }

    pub(crate) fn new_unchecked(
        dim_in: usize,
        dim_out: usize,
        cells: Vec<ConvexPolyhedron>,
        pieces: Vec<AffineMap>,
    ) -> Self {
        debug_assert!(!cells.is_empty() && cells.len() == pieces.len());
        PwaMap {
            dim_in,
            dim_out,
            cells,
            pieces,
        }
    }

    /// One cell, the whole space.
    pub fn affine(map: AffineMap) -> Self {
        PwaMap {
            dim_in: map.dim_in(),
            dim_out: map.dim_out(),
            cells: vec![ConvexPolyhedron::whole(map.dim_in())],
            pieces: vec![map],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::affine(AffineMap::identity(dim))
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn cells(&self) -> &[ConvexPolyhedron] {
        &self.cells
    }

    pub fn pieces(&self) -> &[AffineMap] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ConvexPolyhedron, &AffineMap)> {
        self.cells.iter().zip(&self.pieces)
    }

    pub fn covering(&self) -> Covering {
        Covering {
            ambient: ConvexPolyhedron::whole(self.dim_in),
            cells: self.cells.clone(),
        }
    }

    /// Covering check plus pairwise agreement of pieces on every overlap.
    pub fn validate(&self) -> Result<ValidationReport> {
        let covers = covering::covers(&self.cells, &ConvexPolyhedron::whole(self.dim_in))?;
        let mut conflict = None;
        'pairs: for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.pieces[i] == self.pieces[j] {
                    continue;
                }
                let overlap = self.cells[i].intersect_unchecked(&self.cells[j]);
                let diff = self.pieces[i].sub(&self.pieces[j]);
                for s in 0..self.dim_out {
                    if !vanishes_on(&diff.rows()[s], &diff.offset()[s], &overlap) {
                        conflict = Some(Conflict {
                            cells: (i, j),
                            coordinate: s,
                        });
                        break 'pairs;
                    }
                }
            }
        }
        Ok(ValidationReport { covers, conflict })
    }

    pub fn is_valid(&self) -> Result<bool> {
        Ok(self.validate()?.passed())
    }

    /// Applies the piece of the first cell containing `x`.
    pub fn eval(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim_in, x.dim())?;
        let i = self
            .cells
            .iter()
            .position(|c| c.contains_unchecked(x))
            .ok_or_else(|| Error::NoCellFound(x.to_string()))?;
        let y = self.pieces[i].apply_unchecked(x);
        debug_assert!(self
            .iter()
            .skip(i + 1)
            .filter(|(c, _)| c.contains_unchecked(x))
            .all(|(_, a)| a.apply_unchecked(x) == y));
        Ok(y)
    }

    pub fn scale(&self, factor: &crate::geometry::Rational) -> PwaMap {
        PwaMap {
            pieces: self.pieces.iter().map(|a| a.scale(factor)).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> PwaMap {
        self.scale(&-crate::geometry::Rational::one())
    }

    /// Applies `map` after every piece.
    pub fn post_compose(&self, map: &AffineMap) -> Result<PwaMap> {
        check_dim(self.dim_out, map.dim_in())?;
        let pieces = self
            .pieces
            .iter()
            .map(|a| AffineMap::compose(map, a))
            .collect::<Result<Vec<_>>>()?;
        Ok(PwaMap::new_unchecked(
            self.dim_in,
            map.dim_out(),
            self.cells.clone(),
            pieces,
        ))
    }

    /// Solid refined partition of the cells, pieces inherited from the first
    /// containing input cell.
    pub fn solid_partition(&self) -> Result<(Vec<ConvexPolyhedron>, Vec<AffineMap>)> {
        let Refinement { partition, parents } = covering::solid_partition(&self.covering())?;
        let pieces = parents.iter().map(|&i| self.pieces[i].clone()).collect();
        Ok((partition.cells, pieces))
    }

    /// The same map on its solid refined partition.
    pub fn refined(&self) -> Result<PwaMap> {
        let (cells, pieces) = self.solid_partition()?;
        if cells.is_empty() {
            return Err(Error::InvariantViolation(
                "cells do not cover the space".into(),
            ));
        }
        Ok(PwaMap::new_unchecked(
            self.dim_in,
            self.dim_out,
            cells,
            pieces,
        ))
    }
}

/// `a·x + b = 0` for every `x` in `cell` (vacuous on an empty cell).
pub(crate) fn vanishes_on(
    a: &Vector,
    b: &crate::geometry::Rational,
    cell: &ConvexPolyhedron,
) -> bool {
    if a.is_zero() {
        return b.is_zero() || cell.is_empty();
    }
    let hi = match cell.maximize(a) {
        LpOutcome::Infeasible => return true,
        LpOutcome::Unbounded => return false,
        LpOutcome::Optimal { value, .. } => value,
    };
    if &hi + b != crate::geometry::Rational::zero() {
        return false;
    }
    match cell.minimize(a) {
        LpOutcome::Optimal { value, .. } => (value + b).is_zero(),
        _ => false,
    }
}

/// Intersection kept only when it has interior, in tidied form.
pub(crate) fn solid_overlap(
    a: &ConvexPolyhedron,
    b: &ConvexPolyhedron,
) -> Option<ConvexPolyhedron> {
    let c = a.intersect_unchecked(b).simplified();
    c.is_solid().then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rational;

    pub(crate) fn example_max() -> PwaMap {
        PwaMap::new(
            vec![
                ConvexPolyhedron::from_integers(2, &[(&[1, -1], 0)]),
                ConvexPolyhedron::from_integers(2, &[(&[-1, 1], 0)]),
            ],
            vec![
                AffineMap::from_integers(&[&[0, 1]], &[0]),
                AffineMap::from_integers(&[&[1, 0]], &[0]),
            ],
        )
        .unwrap()
    }

    pub(crate) fn example_min() -> PwaMap {
        PwaMap::new(
            example_max().cells,
            vec![
                AffineMap::from_integers(&[&[1, 0]], &[0]),
                AffineMap::from_integers(&[&[0, 1]], &[0]),
            ],
        )
        .unwrap()
    }

    fn pt(s: &str) -> Vector {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(PwaMap::affine(AffineMap::from_integers(&[&[3, 1]], &[2]))
            .is_valid()
            .unwrap());
        assert!(example_max().is_valid().unwrap());
        let bad = PwaMap::new(
            example_max().cells,
            vec![
                AffineMap::from_integers(&[&[0, 1]], &[0]),
                AffineMap::from_integers(&[&[1, 0]], &[1]),
            ],
        )
        .unwrap();
        let report = bad.validate().unwrap();
        assert!(report.covers);
        assert_eq!(
            report.conflict,
            Some(Conflict {
                cells: (0, 1),
                coordinate: 0
            })
        );
    }

    #[test]
    fn uncovered_map_fails() {
        let p = PwaMap::new(
            vec![ConvexPolyhedron::from_integers(1, &[(&[1], 0)])],
            vec![AffineMap::from_integers(&[&[1]], &[0])],
        )
        .unwrap();
        assert!(!p.validate().unwrap().covers);
        assert!(matches!(p.eval(&pt("1")), Err(Error::NoCellFound(_))));
    }

    #[test]
    fn evaluation() {
        assert_eq!(example_max().eval(&pt("1/2,3")).unwrap(), pt("3"));
        assert_eq!(example_min().eval(&pt("1/2,3")).unwrap(), pt("1/2"));
        let a = AffineMap::from_integers(&[&[2, -1], &[0, 1]], &[1, 1]);
        let x = pt("-7/3,5");
        assert_eq!(
            PwaMap::affine(a.clone()).eval(&x).unwrap(),
            a.apply(&x).unwrap()
        );
    }

    #[test]
    fn serde_shape() {
        let json = serde_json::to_value(example_max()).unwrap();
        assert_eq!(json["dim_in"], 2);
        assert_eq!(json["pieces"][0]["A"][0][1], "1");
        assert_eq!(json["cells"][0]["halfspaces"][0]["alpha"], "0");
        let back: PwaMap = serde_json::from_value(json).unwrap();
        assert_eq!(back, example_max());
    }

    #[test]
    fn refined_keeps_values() {
        let p = example_max().refined().unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.eval(&pt("-4,1")).unwrap(), pt("1"));
        let s = example_max().scale(&Rational::new(-1, 2));
        assert_eq!(s.eval(&pt("2,4")).unwrap(), pt("-2"));
    }
}

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

//! Polyhedral coverings and partitions of a convex polyhedron.
//!
//! Everything here reduces to one primitive: enumerating the nonempty closed
//! sign cells of a hyperplane arrangement inside an ambient polyhedron.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{strict_feasible_point, Halfspace, LpOutcome, Rational, Vector};
use crate::polyhedra::ConvexPolyhedron;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// `a·x ≤ α`
    Below,
    /// `a·x ≥ α`
    Above,
}

/// Distinct hyperplanes of a family of polyhedra, each stored as the `≤`
/// halfspace of its normalized equation (first nonzero normal entry `+1`).
#[derive(Clone, Debug, Default)]
pub struct Arrangement {
    hyperplanes: Vec<Halfspace>,
    lookup: BTreeMap<Halfspace, usize>,
}

impl Arrangement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_polyhedra<'a, I>(polyhedra: I) -> Self
    where
        I: IntoIterator<Item = &'a ConvexPolyhedron>,
    {
        let mut arr = Self::new();
        for p in polyhedra {
            for h in p.halfspaces() {
                arr.insert(h);
            }
        }
        arr
    }

    /// Registers the boundary of `h` and reports which side `h` keeps.
    /// Degenerate halfspaces have no boundary and return `None`.
    pub fn insert(&mut self, h: &Halfspace) -> Option<(usize, Side)> {
        let (key, side) = Self::normalize(h)?;
        let next = self.hyperplanes.len();
        let idx = *self.lookup.entry(key.clone()).or_insert(next);
        if idx == next {
            self.hyperplanes.push(key);
        }
        Some((idx, side))
    }

    pub fn locate(&self, h: &Halfspace) -> Option<(usize, Side)> {
        let (key, side) = Self::normalize(h)?;
        self.lookup.get(&key).map(|&i| (i, side))
    }

    fn normalize(h: &Halfspace) -> Option<(Halfspace, Side)> {
        let lead = h.normal.iter().find(|a| !a.is_zero())?;
        let factor = lead.recip();
        let key = Halfspace::new(h.normal.scale(&factor), &h.bound * &factor);
        let side = if lead.is_positive() {
            Side::Below
        } else {
            Side::Above
        };
        Some((key, side))
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Halfspace] {
        &self.hyperplanes
    }

    /// The closed halfspace on `side` of hyperplane `i`.
    pub fn halfspace(&self, i: usize, side: Side) -> Halfspace {
        match side {
            Side::Below => self.hyperplanes[i].clone(),
            Side::Above => self.hyperplanes[i].flipped(),
        }
    }

    /// All nonempty closed sign cells inside `within`, depth first with the
    /// `Below` side explored before `Above`.
    pub fn sign_cells(&self, within: &ConvexPolyhedron) -> Vec<SignCell> {
        let mut out = Vec::new();
        if within.is_empty() {
            return out;
        }
        let mut signs = Vec::with_capacity(self.len());
        self.descend(within.clone(), false, &mut signs, &mut out);
        out
    }

    /// The sign cells with nonempty interior, in the same order. Branches
    /// that only touch a hyperplane are pruned, so concurrent hyperplanes do
    /// not blow up the search.
    pub fn solid_sign_cells(&self, within: &ConvexPolyhedron) -> Vec<SignCell> {
        let mut out = Vec::new();
        if !within.is_solid() {
            return out;
        }
        let mut signs = Vec::with_capacity(self.len());
        self.descend(within.clone(), true, &mut signs, &mut out);
        out
    }

    fn descend(
        &self,
        cell: ConvexPolyhedron,
        solid: bool,
        signs: &mut Vec<Side>,
        out: &mut Vec<SignCell>,
    ) {
        let depth = signs.len();
        if depth == self.len() {
            out.push(SignCell {
                signs: signs.clone(),
                polyhedron: cell,
            });
            return;
        }
        let h = &self.hyperplanes[depth];
        let lo = match cell.minimize(&h.normal) {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        };
        let hi = match cell.maximize(&h.normal) {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        };
        // a solid cell meeting the open side keeps a solid part there
        let below_nonempty =
            lo.as_ref()
                .is_none_or(|v| if solid { *v < h.bound } else { *v <= h.bound });
        let above_nonempty =
            hi.as_ref()
                .is_none_or(|v| if solid { *v > h.bound } else { *v >= h.bound });
        let below_redundant = hi.as_ref().is_some_and(|v| *v <= h.bound);
        let above_redundant = lo.as_ref().is_some_and(|v| *v >= h.bound);
        for (side, nonempty, redundant) in [
            (Side::Below, below_nonempty, below_redundant),
            (Side::Above, above_nonempty, above_redundant),
        ] {
            if !nonempty {
                continue;
            }
            let child = if redundant {
                cell.clone()
            } else {
                let mut hs = cell.halfspaces().to_vec();
                hs.push(self.halfspace(depth, side));
                ConvexPolyhedron::new_unchecked(cell.dim(), hs)
            };
            signs.push(side);
            self.descend(child, solid, signs, out);
            signs.pop();
        }
    }
}

/// A cell `D_I` of an arrangement: `Below` on the hyperplanes in `I`, `Above`
/// on the rest. The stored polyhedron omits sides implied by the others.
#[derive(Clone, Debug)]
pub struct SignCell {
    pub signs: Vec<Side>,
    pub polyhedron: ConvexPolyhedron,
}

impl SignCell {
    /// Hyperplane indices on the `Below` side.
    pub fn index_set(&self) -> Vec<usize> {
        self.signs
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Side::Below)
            .map(|(i, _)| i)
            .collect()
    }
}

/// How each cell of a family sits in an arrangement, for fast syntactic
/// containment tests.
struct CellSignature {
    sides: Vec<(usize, Side)>,
    empty: bool,
}

fn signatures(arr: &Arrangement, cells: &[ConvexPolyhedron]) -> Vec<CellSignature> {
    cells
        .iter()
        .map(|c| {
            let mut sides = Vec::new();
            let mut empty = false;
            for h in c.halfspaces() {
                match arr.locate(h) {
                    Some(s) => sides.push(s),
                    None => empty |= !h.is_whole_space(),
                }
            }
            CellSignature { sides, empty }
        })
        .collect()
}

fn sign_cell_inside(cell: &SignCell, signature: &CellSignature, target: &ConvexPolyhedron) -> bool {
    if signature.empty {
        return false;
    }
    if signature
        .sides
        .iter()
        .all(|&(i, side)| cell.signs[i] == side)
    {
        return true;
    }
    cell.polyhedron.is_subset_of(target)
}

/// `Q` with a family of convex polyhedra claimed to cover it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Covering {
    pub ambient: ConvexPolyhedron,
    pub cells: Vec<ConvexPolyhedron>,
}

/// A covering whose members have pairwise disjoint relative interiors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub ambient: ConvexPolyhedron,
    pub cells: Vec<ConvexPolyhedron>,
}

impl Covering {
    pub fn new(ambient: ConvexPolyhedron, cells: Vec<ConvexPolyhedron>) -> Result<Self> {
        for c in &cells {
            check_dim(ambient.dim(), c.dim())?;
        }
        Ok(Covering { ambient, cells })
    }

    pub fn of_space(dim: usize, cells: Vec<ConvexPolyhedron>) -> Result<Self> {
        Self::new(ConvexPolyhedron::whole(dim), cells)
    }

    /// Every cell lies in the ambient set and their union is all of it.
    pub fn is_valid(&self) -> Result<bool> {
        let inside = self.cells.iter().all(|c| c.is_subset_of(&self.ambient));
        Ok(inside && covers(&self.cells, &self.ambient)?)
    }
}

impl From<Partition> for Covering {
    fn from(p: Partition) -> Self {
        Covering {
            ambient: p.ambient,
            cells: p.cells,
        }
    }
}

/// `⋃ cells ⊇ Q`, decided on the sign cells of all boundaries inside `Q`.
pub fn covers(cells: &[ConvexPolyhedron], ambient: &ConvexPolyhedron) -> Result<bool> {
    for c in cells {
        check_dim(ambient.dim(), c.dim())?;
    }
    let arr = Arrangement::from_polyhedra(std::iter::once(ambient).chain(cells));
    let sigs = signatures(&arr, cells);
    Ok(arr.sign_cells(ambient).iter().all(|sc| {
        cells
            .iter()
            .zip(&sigs)
            .any(|(c, sig)| sign_cell_inside(sc, sig, c))
    }))
}

/// Keeps only the cells with nonempty interior; they still cover `Q`.
pub fn solidify(covering: &Covering) -> Result<Covering> {
    if !covering.ambient.is_solid() {
        return Err(Error::AmbientNotSolid);
    }
    let cells: Vec<ConvexPolyhedron> = covering
        .cells
        .iter()
        .filter(|c| c.is_solid())
        .cloned()
        .collect();
    debug_assert!(covers(&cells, &covering.ambient).unwrap_or(false));
    Ok(Covering {
        ambient: covering.ambient.clone(),
        cells,
    })
}

/// A refined partition together with, for each output cell, the index of the
/// first input cell containing it.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub partition: Partition,
    pub parents: Vec<usize>,
}

/// Arrangement refinement: the distinct nonempty sign cells of all cell
/// boundaries that fit inside some input cell.
pub fn refine_to_partition(covering: &Covering) -> Result<Partition> {
    refine(covering).map(|r| r.partition)
}

pub fn refine(covering: &Covering) -> Result<Refinement> {
    let ambient = &covering.ambient;
    let cells = &covering.cells;
    for c in cells {
        check_dim(ambient.dim(), c.dim())?;
    }
    let arr = Arrangement::from_polyhedra(cells);
    let sigs = signatures(&arr, cells);
    let mut kept: Vec<(ConvexPolyhedron, usize, bool)> = Vec::new();
    for sc in arr.sign_cells(ambient) {
        let parent = cells
            .iter()
            .zip(&sigs)
            .position(|(c, sig)| sign_cell_inside(&sc, sig, c))
            .ok_or_else(|| {
                Error::InvariantViolation("refined cell lies in no input cell".into())
            })?;
        let solid = sc.polyhedron.is_solid();
        // Only lower-dimensional sign cells can coincide as sets.
        if !solid && kept.iter().any(|(p, _, s)| !s && p.set_eq(&sc.polyhedron)) {
            continue;
        }
        kept.push((sc.polyhedron, parent, solid));
    }
    let parents = kept.iter().map(|(_, p, _)| *p).collect();
    let cells = kept.into_iter().map(|(c, _, _)| c).collect();
    Ok(Refinement {
        partition: Partition {
            ambient: ambient.clone(),
            cells,
        },
        parents,
    })
}

/// Relative-interior data reused across pairwise tests.
struct RiSystem {
    strict: Vec<Halfspace>,
    equalities: Vec<(Vector, Rational)>,
}

fn ri_system(p: &ConvexPolyhedron) -> Result<RiSystem> {
    let hull = p.affine_hull()?;
    let strict = p
        .halfspaces()
        .iter()
        .zip(&hull.implicit)
        .filter(|(h, &imp)| !imp && !h.is_degenerate())
        .map(|(h, _)| h.clone())
        .collect();
    Ok(RiSystem {
        strict,
        equalities: hull.equalities,
    })
}

/// Covering of `Q` plus pairwise disjoint relative interiors.
pub fn is_partition(cells: &[ConvexPolyhedron], ambient: &ConvexPolyhedron) -> Result<bool> {
    for c in cells {
        check_dim(ambient.dim(), c.dim())?;
    }
    if !cells.iter().all(|c| c.is_subset_of(ambient)) || !covers(cells, ambient)? {
        return Ok(false);
    }
    let systems = cells
        .iter()
        .filter(|c| !c.is_empty())
        .map(ri_system)
        .collect::<Result<Vec<_>>>()?;
    for i in 0..systems.len() {
        for j in i + 1..systems.len() {
            let strict: Vec<Halfspace> = systems[i]
                .strict
                .iter()
                .chain(&systems[j].strict)
                .cloned()
                .collect();
            let eqs: Vec<(Vector, Rational)> = systems[i]
                .equalities
                .iter()
                .chain(&systems[j].equalities)
                .cloned()
                .collect();
            if strict_feasible_point(ambient.dim(), &strict, &[], &eqs).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Solid partition realizing the conventional definition: refine, then drop
/// cells with empty interior.
pub fn solid_partition(covering: &Covering) -> Result<Refinement> {
    let ambient = &covering.ambient;
    if !ambient.is_solid() {
        return Err(Error::AmbientNotSolid);
    }
    let cells = &covering.cells;
    for c in cells {
        check_dim(ambient.dim(), c.dim())?;
    }
    let arr = Arrangement::from_polyhedra(cells);
    let sigs = signatures(&arr, cells);
    let mut out = Vec::new();
    let mut parents = Vec::new();
    for sc in arr.solid_sign_cells(ambient) {
        let parent = cells
            .iter()
            .zip(&sigs)
            .position(|(c, sig)| sign_cell_inside(&sc, sig, c))
            .ok_or_else(|| {
                Error::InvariantViolation("refined cell lies in no input cell".into())
            })?;
        out.push(sc.polyhedron);
        parents.push(parent);
    }
    Ok(Refinement {
        partition: Partition {
            ambient: ambient.clone(),
            cells: out,
        },
        parents,
    })
}

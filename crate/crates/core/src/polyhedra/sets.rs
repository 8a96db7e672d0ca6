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

use serde::{Deserialize, Serialize};

use super::ConvexPolyhedron;
use crate::error::{check_dim, Error, Result};
use crate::geometry::{Halfspace, Vector};

/// Finite union of convex polyhedra; no pieces is the empty set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSet")]
pub struct PolyhedralSet {
    dim: usize,
    pieces: Vec<ConvexPolyhedron>,
}

#[derive(Deserialize)]
struct RawSet {
    dim: usize,
    pieces: Vec<ConvexPolyhedron>,
}

impl TryFrom<RawSet> for PolyhedralSet {
    type Error = Error;
    fn try_from(raw: RawSet) -> Result<Self> {
        PolyhedralSet::new(raw.dim, raw.pieces)
    }
}

impl PolyhedralSet {
    pub fn new(dim: usize, pieces: Vec<ConvexPolyhedron>) -> Result<Self> {
        for p in &pieces {
            check_dim(dim, p.dim())?;
        }
        Ok(PolyhedralSet { dim, pieces })
    }

    pub(crate) fn new_unchecked(dim: usize, pieces: Vec<ConvexPolyhedron>) -> Self {
        PolyhedralSet { dim, pieces }
    }

    pub fn empty(dim: usize) -> Self {
        PolyhedralSet {
            dim,
            pieces: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[ConvexPolyhedron] {
        &self.pieces
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        Ok(self.pieces.iter().any(|p| p.contains_unchecked(x)))
    }
}

/// Intersection of clauses, each clause a union of closed halfspaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfPolyhedralSet {
    dim: usize,
    clauses: Vec<Vec<Halfspace>>,
}

impl CnfPolyhedralSet {
    pub fn new(dim: usize, clauses: Vec<Vec<Halfspace>>) -> Result<Self> {
        for h in clauses.iter().flatten() {
            check_dim(dim, h.dim())?;
        }
        Ok(CnfPolyhedralSet { dim, clauses })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn clauses(&self) -> &[Vec<Halfspace>] {
        &self.clauses
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        Ok(self
            .clauses
            .iter()
            .all(|clause| clause.iter().any(|h| h.contains(x))))
    }
}

/// Distributes the union over the intersections: one clause per choice of a
/// halfspace from every piece. Empty pieces are skipped, whole-space rows are
/// never chosen, and duplicate clauses (as halfspace sets) are merged.
pub fn dnf_to_cnf(set: &PolyhedralSet) -> CnfPolyhedralSet {
    let dim = set.dim;
    // a piece with an infeasible degenerate row is empty and adds nothing
    let pieces: Vec<&ConvexPolyhedron> = set
        .pieces
        .iter()
        .filter(|p| {
            !p.halfspaces()
                .iter()
                .any(|h| h.is_degenerate() && h.bound.is_negative())
        })
        .collect();
    if pieces.is_empty() {
        return CnfPolyhedralSet {
            dim,
            clauses: vec![Vec::new()],
        };
    }
    if pieces.iter().any(|p| p.is_whole_space()) {
        return CnfPolyhedralSet {
            dim,
            clauses: Vec::new(),
        };
    }
    let choices: Vec<Vec<&Halfspace>> = pieces
        .iter()
        .map(|p| {
            p.halfspaces()
                .iter()
                .filter(|h| !h.is_whole_space())
                .collect()
        })
        .collect();
    let mut seen: BTreeSet<Vec<Halfspace>> = BTreeSet::new();
    let mut clauses = Vec::new();
    let mut index = vec![0usize; choices.len()];
    loop {
        let mut clause: Vec<Halfspace> = index
            .iter()
            .zip(&choices)
            .map(|(&i, c)| c[i].clone())
            .collect();
        clause.sort();
        clause.dedup();
        if seen.insert(clause.clone()) {
            clauses.push(clause);
        }
        // odometer
        let mut k = index.len();
        loop {
            if k == 0 {
                return CnfPolyhedralSet { dim, clauses };
            }
            k -= 1;
            index[k] += 1;
            if index[k] < choices[k].len() {
                break;
            }
            index[k] = 0;
        }
    }
}

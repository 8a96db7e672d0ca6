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

//! Graphs and epigraphs as polyhedral sets, and recovery of a map from its
//! graph.

use crate::covering::covers;
use crate::error::{check_dim, Error, Result};
use crate::geometry::{AffineMap, Halfspace, LpOutcome, Rational, Vector};
use crate::polyhedra::{ConvexPolyhedron, PolyhedralSet};

use super::{from_coordinates, vanishes_on, OrderingCone, PwaMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpiSide {
    Epi,
    Hypo,
}

/// Rows `a·(x, y) ≤ α` encoding `c·(y − A x − b) ≤ 0` for one functional `c`.
fn offset_row(c: &Vector, piece: &AffineMap, sign: &Rational) -> Halfspace {
    // c·y − (cA)·x ≤ c·b, then multiplied by `sign`
    let ca: Vector = (0..piece.dim_in())
        .map(|j| {
            c.iter()
                .zip(piece.rows())
                .filter(|(w, _)| !w.is_zero())
                .map(|(w, r)| w * &r[j])
                .sum()
        })
        .collect();
    let normal = ca.neg().concat(c).scale(sign);
    Halfspace::new(normal, c.dot(piece.offset()) * sign)
}

/// `⋃_i (M_i × Y) ∩ graph A_i` in `X × Y`.
pub fn graph(p: &PwaMap) -> PolyhedralSet {
    let m = p.dim_out();
    let one = Rational::one();
    let pieces = p
        .iter()
        .map(|(cell, a)| {
            let mut hs = cell.lift(m).into_halfspaces();
            for s in 0..m {
                let e = Vector::unit(m, s);
                let row = offset_row(&e, a, &one);
                hs.push(row.flipped());
                hs.push(row);
            }
            ConvexPolyhedron::new_unchecked(p.dim_in() + m, hs)
        })
        .collect();
    PolyhedralSet::new_unchecked(p.dim_in() + m, pieces)
}

/// The nonnegative orthant `{y : −y_s ≤ 0}` as a halfspace list.
pub fn standard_cone_halfspaces(dim: usize) -> Vec<Halfspace> {
    (0..dim)
        .map(|s| Halfspace::new(Vector::unit(dim, s).neg(), Rational::zero()))
        .collect()
}

/// Epigraph `{(x, y) : y − P(x) ∈ K}` or hypograph `{(x, y) : P(x) − y ∈ K}`
/// for the polyhedral cone `K = {y : a_l·y ≤ 0}`.
pub fn epigraph(p: &PwaMap, cone: &[Halfspace], side: EpiSide) -> Result<PolyhedralSet> {
    let m = p.dim_out();
    for h in cone {
        check_dim(m, h.dim())?;
        if !h.bound.is_zero() {
            return Err(Error::NotACone(h.bound.to_string()));
        }
    }
    let sign = match side {
        EpiSide::Epi => Rational::one(),
        EpiSide::Hypo => -Rational::one(),
    };
    let pieces = p
        .iter()
        .map(|(cell, a)| {
            let mut hs = cell.lift(m).into_halfspaces();
            hs.extend(cone.iter().map(|h| offset_row(&h.normal, a, &sign)));
            ConvexPolyhedron::new_unchecked(p.dim_in() + m, hs)
        })
        .collect();
    Ok(PolyhedralSet::new_unchecked(p.dim_in() + m, pieces))
}

/// Recovers `P` from `graph P ⊂ X × Y`, with `X` the first `dim_in`
/// coordinates.
pub fn from_graph(g: &PolyhedralSet, dim_in: usize) -> Result<PwaMap> {
    if dim_in == 0 || g.dim() <= dim_in {
        return Err(Error::NotAFunctionGraph("no output coordinates".into()));
    }
    let m = g.dim() - dim_in;
    let pieces: Vec<&ConvexPolyhedron> = g.pieces().iter().filter(|c| !c.is_empty()).collect();
    let p = if m == 1 {
        scalar_from_graph(&pieces, dim_in)?
    } else {
        let coords = (0..m)
            .map(|s| {
                let projected: Vec<ConvexPolyhedron> = pieces
                    .iter()
                    .map(|c| {
                        let mut c = (*c).clone();
                        for axis in (dim_in..dim_in + m).rev() {
                            if axis != dim_in + s {
                                c = c.project_out(axis);
                            }
                        }
                        c
                    })
                    .collect();
                let refs: Vec<&ConvexPolyhedron> = projected.iter().collect();
                scalar_from_graph(&refs, dim_in)
            })
            .collect::<Result<Vec<_>>>()?;
        from_coordinates(&coords, &OrderingCone::standard(m))?
    };
    check_inside_graph(&pieces, &p)?;
    Ok(p)
}

fn scalar_from_graph(pieces: &[&ConvexPolyhedron], dim_in: usize) -> Result<PwaMap> {
    let shadows: Vec<ConvexPolyhedron> = pieces.iter().map(|c| c.project_out(dim_in)).collect();
    if !covers(&shadows, &ConvexPolyhedron::whole(dim_in))? {
        return Err(Error::NotAFunctionGraph(
            "projection does not cover the input space".into(),
        ));
    }
    let mut cells = Vec::new();
    let mut maps = Vec::new();
    for (piece, shadow) in pieces.iter().zip(shadows) {
        if !shadow.is_solid() {
            continue;
        }
        let hull = piece.affine_hull()?;
        if hull.dimension != dim_in {
            return Err(Error::NotAFunctionGraph(format!(
                "graph piece has dimension {} over an open set of inputs",
                hull.dimension
            )));
        }
        // the hull is a hyperplane a·x + α ξ = β; it is non-vertical iff α ≠ 0
        let (a, beta) = hull
            .equalities
            .iter()
            .find(|(n, _)| !n[dim_in].is_zero())
            .ok_or_else(|| Error::NotAFunctionGraph("vertical graph piece".into()))?;
        let alpha = &a[dim_in];
        let inv = alpha.recip();
        let functional: Vector = a.iter().take(dim_in).map(|v| -(v * &inv)).collect();
        cells.push(shadow.simplified());
        maps.push(AffineMap::scalar(functional, beta * &inv));
    }
    let p = PwaMap::new(cells, maps)?;
    if p.validate()?.conflict.is_some() {
        return Err(Error::NotAFunctionGraph(
            "two values over the same input".into(),
        ));
    }
    Ok(p)
}

/// Every graph piece lies in `graph P`: on each overlap with a cell of `P`,
/// `y − A_j x − b_j` vanishes identically.
fn check_inside_graph(pieces: &[&ConvexPolyhedron], p: &PwaMap) -> Result<()> {
    let n = p.dim_in();
    let m = p.dim_out();
    for g in pieces {
        for (cell, a) in p.iter() {
            let overlap = g.intersect_unchecked(&cell.lift(m));
            if matches!(
                overlap.maximize(&Vector::zeros(n + m)),
                LpOutcome::Infeasible
            ) {
                continue;
            }
            for s in 0..m {
                let row = offset_row(&Vector::unit(m, s), a, &Rational::one());
                if !vanishes_on(&row.normal, &-&row.bound, &overlap) {
                    return Err(Error::NotAFunctionGraph(
                        "graph point off the recovered map".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

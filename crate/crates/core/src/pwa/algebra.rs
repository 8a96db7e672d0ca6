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

//! Vector-space and lattice operations, composition and coordinates.

use crate::covering::{Arrangement, Side};
use crate::error::{check_dim, Error, Result};
use crate::geometry::{AffineMap, Halfspace, Rational};
use crate::polyhedra::ConvexPolyhedron;

use super::{solid_overlap, OrderingCone, PwaMap};

fn assemble(
    dim_in: usize,
    dim_out: usize,
    cells: Vec<ConvexPolyhedron>,
    pieces: Vec<AffineMap>,
) -> Result<PwaMap> {
    if cells.is_empty() {
        return Err(Error::InvariantViolation(
            "operands do not cover the space".into(),
        ));
    }
    Ok(PwaMap::new_unchecked(dim_in, dim_out, cells, pieces))
}

/// `αP + βQ` on the common refinement of both coverings.
pub fn linear_combine(a: &Rational, p: &PwaMap, b: &Rational, q: &PwaMap) -> Result<PwaMap> {
    check_dim(p.dim_in(), q.dim_in())?;
    check_dim(p.dim_out(), q.dim_out())?;
    let mut cells = Vec::new();
    let mut pieces = Vec::new();
    for (m, f) in p.iter() {
        for (n, g) in q.iter() {
            if let Some(c) = solid_overlap(m, n) {
                cells.push(c);
                pieces.push(f.combine(a, g, b));
            }
        }
    }
    assemble(p.dim_in(), p.dim_out(), cells, pieces)
}

pub fn lattice_sup(p: &PwaMap, q: &PwaMap, cone: &OrderingCone) -> Result<PwaMap> {
    lattice(p, q, cone, true)
}

pub fn lattice_inf(p: &PwaMap, q: &PwaMap, cone: &OrderingCone) -> Result<PwaMap> {
    lattice(p, q, cone, false)
}

fn lattice(p: &PwaMap, q: &PwaMap, cone: &OrderingCone, take_max: bool) -> Result<PwaMap> {
    check_dim(p.dim_in(), q.dim_in())?;
    check_dim(p.dim_out(), q.dim_out())?;
    check_dim(p.dim_out(), cone.dim())?;
    let n = p.dim_out();
    let mut cells = Vec::new();
    let mut pieces = Vec::new();
    for (m, a) in p.iter() {
        for (k, b) in q.iter() {
            let Some(overlap) = solid_overlap(m, k) else {
                continue;
            };
            let f = cone.map_coords(a);
            let g = cone.map_coords(b);
            let d = f.sub(&g);
            // per coordinate: where `f_s ≤ g_s` is decided, either by a
            // hyperplane side or, for constant differences, once and for all
            let mut arr = Arrangement::new();
            let mut below: Vec<Result<(usize, Side), bool>> = Vec::with_capacity(n);
            for s in 0..n {
                let h = Halfspace::new(d.rows()[s].clone(), -&d.offset()[s]);
                below.push(match arr.insert(&h) {
                    Some(loc) => Ok(loc),
                    None => Err(!h.bound.is_negative()),
                });
            }
            for sc in arr.sign_cells(&overlap) {
                let cell = sc.polyhedron.simplified();
                if !arr.is_empty() && !cell.is_solid() {
                    continue;
                }
                let coords: Vec<AffineMap> = (0..n)
                    .map(|s| {
                        let f_le_g = match below[s] {
                            Ok((i, side)) => sc.signs[i] == side,
                            Err(le) => le,
                        };
                        if f_le_g == take_max {
                            g.coordinate(s)
                        } else {
                            f.coordinate(s)
                        }
                    })
                    .collect();
                cells.push(cell);
                pieces.push(cone.map_from_coords(&AffineMap::stack(&coords)?));
            }
        }
    }
    assemble(p.dim_in(), n, cells, pieces)
}

/// `Q ∘ P` on the cells `M_i ∩ P_i⁻¹(D_j)`.
pub fn compose(q: &PwaMap, p: &PwaMap) -> Result<PwaMap> {
    check_dim(q.dim_in(), p.dim_out())?;
    let mut cells = Vec::new();
    let mut pieces = Vec::new();
    for (m, a) in p.iter() {
        for (d, b) in q.iter() {
            let pulled = d.preimage(a)?;
            if let Some(c) = solid_overlap(m, &pulled) {
                cells.push(c);
                pieces.push(AffineMap::compose(b, a)?);
            }
        }
    }
    assemble(p.dim_in(), q.dim_out(), cells, pieces)
}

/// Scalar maps `e_i* ∘ P` on the same cells.
pub fn coordinates(p: &PwaMap, cone: &OrderingCone) -> Result<Vec<PwaMap>> {
    check_dim(p.dim_out(), cone.dim())?;
    let in_coords: Vec<AffineMap> = p.pieces().iter().map(|a| cone.map_coords(a)).collect();
    Ok((0..p.dim_out())
        .map(|s| {
            PwaMap::new_unchecked(
                p.dim_in(),
                1,
                p.cells().to_vec(),
                in_coords.iter().map(|a| a.coordinate(s)).collect(),
            )
        })
        .collect())
}

/// `P(x) = Σ p_i(x) e_i`.
pub fn from_coordinates(coords: &[PwaMap], cone: &OrderingCone) -> Result<PwaMap> {
    check_dim(cone.dim(), coords.len())?;
    let dim_in = coords[0].dim_in();
    for c in coords {
        check_dim(dim_in, c.dim_in())?;
        check_dim(1, c.dim_out())?;
    }
    let mut acc: Vec<(ConvexPolyhedron, Vec<AffineMap>)> = coords[0]
        .iter()
        .map(|(m, a)| (m.clone(), vec![a.clone()]))
        .collect();
    for c in &coords[1..] {
        let mut next = Vec::new();
        for (m, parts) in &acc {
            for (n, a) in c.iter() {
                if let Some(cell) = solid_overlap(m, n) {
                    let mut parts = parts.clone();
                    parts.push(a.clone());
                    next.push((cell, parts));
                }
            }
        }
        acc = next;
    }
    let mut cells = Vec::with_capacity(acc.len());
    let mut pieces = Vec::with_capacity(acc.len());
    for (m, parts) in acc {
        cells.push(m);
        pieces.push(cone.map_from_coords(&AffineMap::stack(&parts)?));
    }
    assemble(dim_in, coords.len(), cells, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vector;
    use crate::pwa::tests::{example_max, example_min};

    fn pt(s: &str) -> Vector {
        s.parse().unwrap()
    }

    fn scalar(a: &[i64], b: i64) -> PwaMap {
        PwaMap::affine(AffineMap::from_integers(&[a], &[b]))
    }

    #[test]
    fn max_plus_min_is_sum() {
        let one = Rational::one();
        let s = linear_combine(&one, &example_max(), &one, &example_min()).unwrap();
        assert!(s.is_valid().unwrap());
        for x in ["1/2,3", "-2,-5", "7,7", "0,-1/3"] {
            let v = pt(x);
            assert_eq!(s.eval(&v).unwrap(), Vector::new(vec![&v[0] + &v[1]]));
        }
        let zero = linear_combine(&one, &example_max(), &-&one, &example_max()).unwrap();
        assert!(zero.pieces().iter().all(AffineMap::is_zero));
    }

    #[test]
    fn absolute_value() {
        let k = OrderingCone::standard(1);
        let abs = lattice_sup(&scalar(&[1], 0), &scalar(&[-1], 0), &k).unwrap();
        assert!(abs.is_valid().unwrap());
        assert_eq!(abs.eval(&pt("-1")).unwrap(), pt("1"));
        assert_eq!(abs.eval(&pt("5/2")).unwrap(), pt("5/2"));
        let neg = lattice_inf(&scalar(&[1], 0), &scalar(&[-1], 0), &k).unwrap();
        assert_eq!(neg.eval(&pt("-3")).unwrap(), pt("-3"));
        let idem = lattice_sup(&example_max(), &example_max(), &k).unwrap();
        assert_eq!(idem.eval(&pt("4,-1")).unwrap(), pt("4"));
    }

    #[test]
    fn constant_difference_needs_no_split() {
        let k = OrderingCone::standard(1);
        let p = lattice_sup(&scalar(&[1], 1), &scalar(&[1], 0), &k).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.eval(&pt("3")).unwrap(), pt("4"));
    }

    #[test]
    fn skewed_sup() {
        let k = OrderingCone::from_generators(&[pt("1,0"), pt("1,1")]).unwrap();
        let p = PwaMap::identity(2);
        let q = PwaMap::affine(AffineMap::from_integers(&[&[0, 1], &[1, 0]], &[0, 0]));
        let s = lattice_sup(&p, &q, &k).unwrap();
        assert!(s.is_valid().unwrap());
        for x in ["1,0", "0,1", "-2,3", "5/2,-1/3"] {
            let v = pt(x);
            let expected = k.sup(&v, &q.eval(&v).unwrap());
            assert_eq!(s.eval(&v).unwrap(), expected);
        }
    }

    #[test]
    fn composition() {
        let k = OrderingCone::standard(1);
        let clip = lattice_inf(
            &scalar(&[1], 0),
            &PwaMap::affine(AffineMap::constant(1, pt("1"))),
            &k,
        )
        .unwrap();
        let c = compose(&clip, &example_max()).unwrap();
        assert!(c.len() <= clip.len() * example_max().len());
        assert_eq!(c.eval(&pt("2,0")).unwrap(), pt("1"));
        assert_eq!(c.eval(&pt("-2,1/2")).unwrap(), pt("1/2"));
        let id = compose(&PwaMap::identity(1), &example_max()).unwrap();
        assert_eq!(id.eval(&pt("3,-9")).unwrap(), pt("3"));
    }

    #[test]
    fn coordinate_round_trip() {
        let k = OrderingCone::standard(2);
        let cs = coordinates(&PwaMap::identity(2), &k).unwrap();
        assert_eq!(cs[1].eval(&pt("4,-5")).unwrap(), pt("-5"));
        let back = from_coordinates(&cs, &k).unwrap();
        assert_eq!(back.eval(&pt("4,-5")).unwrap(), pt("4,-5"));

        let skew = OrderingCone::from_generators(&[pt("2,1"), pt("0,1")]).unwrap();
        let p = from_coordinates(&[example_max(), example_min()], &skew).unwrap();
        let cs = coordinates(&p, &skew).unwrap();
        assert_eq!(cs[0].eval(&pt("1,3")).unwrap(), pt("3"));
        assert_eq!(cs[1].eval(&pt("1,3")).unwrap(), pt("1"));
        let again = from_coordinates(&cs, &skew).unwrap();
        assert_eq!(again.eval(&pt("1,3")).unwrap(), p.eval(&pt("1,3")).unwrap());
    }
}

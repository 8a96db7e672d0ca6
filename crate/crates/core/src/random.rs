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

//! Random instances with small exact coefficients, for tests and benchmarks.

use rand::Rng;

use crate::covering::{Arrangement, Covering};
use crate::error::Result;
use crate::geometry::{AffineMap, Halfspace, Rational, Vector};
use crate::polyhedra::ConvexPolyhedron;
use crate::pwa::{from_coordinates, lattice_inf, lattice_sup, OrderingCone, PwaMap};

pub fn rational<R: Rng>(rng: &mut R, max_abs_num: i64, max_den: i64) -> Rational {
    Rational::new(
        rng.random_range(-max_abs_num..=max_abs_num),
        rng.random_range(1..=max_den),
    )
}

/// Point with coordinates `p/q`, `|p| ≤ 40`, `1 ≤ q ≤ 8`.
pub fn point<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    (0..dim).map(|_| rational(rng, 40, 8)).collect()
}

/// Integer grid points of `[-3, 3]^dim` (up to `count`), followed by random
/// points until `count` are listed.
pub fn sample_points<R: Rng>(rng: &mut R, dim: usize, count: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = vec![Vector::zeros(0)];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| (-3..=3).map(move |k| p.concat(&Vector::from_integers(&[k]))))
            .collect();
    }
    out.truncate(count / 2);
    while out.len() < count {
        out.push(point(rng, dim));
    }
    out
}

/// Integer entries in `[-3, 3]`.
pub fn affine<R: Rng>(rng: &mut R, dim_in: usize, dim_out: usize) -> AffineMap {
    let rows = (0..dim_out)
        .map(|_| {
            (0..dim_in)
                .map(|_| Rational::from(rng.random_range(-3..=3i64)))
                .collect()
        })
        .collect();
    let offset = (0..dim_out)
        .map(|_| Rational::from(rng.random_range(-3..=3i64)))
        .collect();
    AffineMap::new(rows, offset).expect("dim_out ≥ 1")
}

pub fn linear<R: Rng>(rng: &mut R, dim_in: usize, dim_out: usize) -> AffineMap {
    affine(rng, dim_in, dim_out).linear_part()
}

/// Nonzero normal with integer entries in `[-3, 3]`.
pub fn halfspace<R: Rng>(rng: &mut R, dim: usize) -> Halfspace {
    loop {
        let normal: Vector = (0..dim)
            .map(|_| Rational::from(rng.random_range(-3..=3i64)))
            .collect();
        if !normal.is_zero() {
            return Halfspace::new(normal, Rational::from(rng.random_range(-3..=3i64)));
        }
    }
}

/// Random lattice expression (`sup`/`inf` tree) over `leaves` maps drawn
/// from `leaf`.
pub fn lattice_tree<R: Rng>(
    rng: &mut R,
    leaves: usize,
    leaf: &mut dyn FnMut(&mut R) -> AffineMap,
    cone: &OrderingCone,
) -> Result<PwaMap> {
    if leaves <= 1 {
        return Ok(PwaMap::affine(leaf(rng)));
    }
    let left = rng.random_range(1..leaves);
    let a = lattice_tree(rng, left, leaf, cone)?;
    let b = lattice_tree(rng, leaves - left, leaf, cone)?;
    if rng.random_bool(0.5) {
        lattice_sup(&a, &b, cone)
    } else {
        lattice_inf(&a, &b, cone)
    }
}

/// Valid map built coordinatewise from random lattice trees, with at least
/// two (unless `max_cells` is 1) and at most `max_cells` cells.
pub fn pwa_map<R: Rng>(rng: &mut R, dim_in: usize, dim_out: usize, max_cells: usize) -> PwaMap {
    let scalar = OrderingCone::standard(1);
    let min_cells = max_cells.min(2);
    loop {
        let coords: Vec<PwaMap> = (0..dim_out)
            .map(|_| {
                let leaves = rng.random_range(2..=if dim_out == 1 { 5 } else { 3 });
                lattice_tree(rng, leaves, &mut |r: &mut R| affine(r, dim_in, 1), &scalar)
                    .expect("standard cone")
            })
            .collect();
        let p = from_coordinates(&coords, &OrderingCone::standard(dim_out)).expect("valid parts");
        if (min_cells..=max_cells).contains(&p.len()) {
            return p;
        }
    }
}

/// Piecewise linear map from random linear leaves.
pub fn pwl_map<R: Rng>(rng: &mut R, dim_in: usize, dim_out: usize, leaves: usize) -> PwaMap {
    let cone = OrderingCone::standard(dim_out);
    lattice_tree(
        rng,
        leaves,
        &mut |r: &mut R| linear(r, dim_in, dim_out),
        &cone,
    )
    .expect("standard cone")
}

/// `sup` of `count` random affine maps.
pub fn convex_map<R: Rng>(rng: &mut R, dim_in: usize, dim_out: usize, count: usize) -> PwaMap {
    let cone = OrderingCone::standard(dim_out);
    let mut p = PwaMap::affine(affine(rng, dim_in, dim_out));
    for _ in 1..count {
        p = lattice_sup(&p, &PwaMap::affine(affine(rng, dim_in, dim_out)), &cone)
            .expect("standard cone");
    }
    p
}

/// Covering of the plane: closed sign cells of two or three random lines,
/// each bound loosened by a random amount so neighbours overlap. At most
/// `max_hyperplanes` distinct boundary lines.
pub fn covering_2d<R: Rng>(rng: &mut R, max_hyperplanes: usize) -> Covering {
    loop {
        let lines = rng.random_range(2..=3);
        let mut arr = Arrangement::new();
        for _ in 0..lines {
            arr.insert(&halfspace(rng, 2));
        }
        let cells: Vec<ConvexPolyhedron> = arr
            .sign_cells(&ConvexPolyhedron::whole(2))
            .into_iter()
            .filter(|c| c.polyhedron.is_solid())
            .map(|c| {
                let hs = c
                    .polyhedron
                    .halfspaces()
                    .iter()
                    .map(|h| {
                        let slack = Rational::new(rng.random_range(0..=2), 1);
                        Halfspace::new(h.normal.clone(), &h.bound + &slack)
                    })
                    .collect();
                ConvexPolyhedron::new_unchecked(2, hs)
            })
            .collect();
        if Arrangement::from_polyhedra(&cells).len() <= max_hyperplanes {
            return Covering {
                ambient: ConvexPolyhedron::whole(2),
                cells,
            };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::covers;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_maps_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let p = pwa_map(&mut rng, 2, 2, 8);
            assert!(p.len() <= 8);
            assert!(p.is_valid().unwrap());
        }
    }

    #[test]
    fn generated_coverings_cover() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let c = covering_2d(&mut rng, 10);
            assert!(covers(&c.cells, &c.ambient).unwrap());
        }
    }

    #[test]
    fn sample_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts = sample_points(&mut rng, 2, 1000);
        assert_eq!(pts.len(), 1000);
        assert_eq!(pts[0], Vector::from_integers(&[-3, -3]));
    }
}

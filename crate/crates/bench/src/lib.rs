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

//! Shared fixtures for the benchmarks.

use pwa_core::covering::Covering;
use pwa_core::{random, ConvexPolyhedron, Halfspace, PwaMap, Rational, Vector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bounded polytope: the box `[-10, 10]^dim` cut by `rows` random halfspaces
/// that keep the origin.
pub fn polytope(seed: u64, dim: usize, rows: usize) -> ConvexPolyhedron {
    let mut r = rng(seed);
    let mut hs = Vec::with_capacity(2 * dim + rows);
    for i in 0..dim {
        hs.push(Halfspace::new(
            Vector::unit(dim, i),
            Rational::from_integer(10),
        ));
        hs.push(Halfspace::new(
            Vector::unit(dim, i).neg(),
            Rational::from_integer(10),
        ));
    }
    while hs.len() < 2 * dim + rows {
        let h = random::halfspace(&mut r, dim);
        if !h.bound.is_negative() && !h.normal.is_zero() {
            hs.push(h);
        }
    }
    ConvexPolyhedron::new(dim, hs).expect("same dimension")
}

pub fn objective(seed: u64, dim: usize) -> Vector {
    random::point(&mut rng(seed), dim)
}

pub fn maps(
    seed: u64,
    count: usize,
    dim_in: usize,
    dim_out: usize,
    max_cells: usize,
) -> Vec<PwaMap> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random::pwa_map(&mut r, dim_in, dim_out, max_cells))
        .collect()
}

pub fn coverings(seed: u64, count: usize) -> Vec<Covering> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random::covering_2d(&mut r, 10))
        .collect()
}

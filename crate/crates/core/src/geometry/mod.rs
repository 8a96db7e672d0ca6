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

//! Exact scalars, vectors, affine maps, halfspaces and the LP kernel.

mod linalg;
mod lp;
mod rational;

pub use linalg::{invert, rank, AffineMap, Halfspace, Vector};
pub(crate) use lp::solve_lp_unchecked;
pub use lp::{
    feasible_point, solve_lp, strict_feasible, strict_feasible_point, Direction, LpOutcome,
};
pub use rational::Rational;

/// `outer ∘ inner`, see [`AffineMap::compose`].
pub fn affine_compose(outer: &AffineMap, inner: &AffineMap) -> crate::Result<AffineMap> {
    AffineMap::compose(outer, inner)
}

pub fn affine_apply(map: &AffineMap, x: &Vector) -> crate::Result<Vector> {
    map.apply(x)
}

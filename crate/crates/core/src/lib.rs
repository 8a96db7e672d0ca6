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

//! Exact piecewise affine mappings over convex polyhedral partitions.

pub mod approx;
pub mod covering;
pub mod error;
pub mod geometry;
pub mod polyhedra;
pub mod pwa;
pub mod pwl;
pub mod random;

pub use error::{Error, Result};
pub use geometry::{AffineMap, Halfspace, Rational, Vector};
pub use polyhedra::{ConvexPolyhedron, PolyhedralSet};
pub use pwa::{CanonicalForm, OrderingCone, PwaMap};

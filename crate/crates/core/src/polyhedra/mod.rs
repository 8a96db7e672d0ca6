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

//! Convex polyhedra as finite halfspace intersections, and nonconvex
//! polyhedral sets as finite unions (DNF) or intersections of unions (CNF).

mod convex;
mod sets;

pub use convex::{AffineHull, ConvexPolyhedron};
pub use sets::{dnf_to_cnf, CnfPolyhedralSet, PolyhedralSet};

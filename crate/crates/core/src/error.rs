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

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("ambient polyhedron has empty interior")]
    AmbientNotSolid,
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("no cell contains the point {0}")]
    NoCellFound(String),
    #[error("not the graph of a total single-valued map: {0}")]
    NotAFunctionGraph(String),
    #[error("map is not convex with respect to the ordering cone")]
    NotConvex,
    #[error("canonical form would hold {size} affine maps (limit {limit})")]
    FormTooLarge { size: usize, limit: usize },
    #[error("linear form produced a member with nonzero offset")]
    NonzeroOffsetProduced,
    #[error("map is not piecewise linear")]
    NotPiecewiseLinear,
    #[error("cone generators are not a basis")]
    SingularCone,
    #[error("not a cone: halfspace bound {0} is nonzero")]
    NotACone(String),
    #[error("function oracle failed: {0}")]
    OracleFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

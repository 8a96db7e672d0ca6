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

use serde_json::{json, Value};

/// Failure of a command, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed flags, files or values; exit code 2.
    Usage(String),
    /// Well-formed input that fails a semantic check; exit code 1, with a
    /// JSON diagnostic.
    Semantic(Value),
}

impl CliError {
    pub fn semantic(kind: &str, message: impl Into<String>) -> Self {
        CliError::Semantic(json!({ "error": kind, "message": message.into() }))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Semantic(_) => 1,
        }
    }
}

fn kind(e: &pwa_core::Error) -> &'static str {
    use pwa_core::Error::*;
    match e {
        DimensionMismatch { .. } => "dimension_mismatch",
        EmptyPolyhedron => "empty_polyhedron",
        AmbientNotSolid => "ambient_not_solid",
        InvariantViolation(_) => "invariant_violation",
        NoCellFound(_) => "no_cell_found",
        NotAFunctionGraph(_) => "not_a_function_graph",
        NotConvex => "not_convex",
        FormTooLarge { .. } => "form_too_large",
        NonzeroOffsetProduced => "nonzero_offset_produced",
        NotPiecewiseLinear => "not_piecewise_linear",
        SingularCone => "singular_cone",
        NotACone(_) => "not_a_cone",
        OracleFailure(_) => "oracle_failure",
        Parse(_) => "parse",
    }
}

impl From<pwa_core::Error> for CliError {
    fn from(e: pwa_core::Error) -> Self {
        match e {
            pwa_core::Error::Parse(msg) => CliError::Usage(msg),
            e => {
                let mut v = json!({ "error": kind(&e), "message": e.to_string() });
                if let pwa_core::Error::DimensionMismatch { expected, found } = e {
                    v["expected"] = json!(expected);
                    v["found"] = json!(found);
                }
                if let pwa_core::Error::FormTooLarge { size, limit } = e {
                    v["size"] = json!(size);
                    v["limit"] = json!(limit);
                }
                CliError::Semantic(v)
            }
        }
    }
}

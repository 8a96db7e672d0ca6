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

use std::fs;
use std::path::Path;

use pwa_core::covering::Covering;
use pwa_core::pwa::FormKind;
use pwa_core::{
    CanonicalForm, ConvexPolyhedron, Halfspace, OrderingCone, PolyhedralSet, PwaMap, Vector,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))
}

/// Loads a map and checks covering and consistency.
pub fn read_map(path: &Path) -> Result<PwaMap, CliError> {
    let p: PwaMap = read_json(path)?;
    check_valid(&p)?;
    Ok(p)
}

pub fn check_valid(p: &PwaMap) -> Result<(), CliError> {
    let report = p.validate()?;
    if !report.covers {
        return Err(CliError::semantic(
            "not_covering",
            "the cells do not cover the whole space",
        ));
    }
    if let Some(c) = report.conflict {
        let (i, j) = c.cells;
        return Err(CliError::Semantic(json!({
            "error": "inconsistent",
            "cells": [i, j],
            "coordinate": c.coordinate,
            "message": format!(
                "pieces of cells {i} and {j} disagree in coordinate {} on the intersection",
                c.coordinate
            ),
        })));
    }
    Ok(())
}

pub fn read_cone(path: Option<&Path>, dim: usize) -> Result<OrderingCone, CliError> {
    match path {
        None => Ok(OrderingCone::standard(dim)),
        Some(path) => {
            let k: OrderingCone = read_json(path)?;
            if k.dim() != dim {
                return Err(pwa_core::Error::DimensionMismatch {
                    expected: dim,
                    found: k.dim(),
                }
                .into());
            }
            Ok(k)
        }
    }
}

/// A cone as a halfspace list `{y : a·y ≤ 0}`. Accepts either a polyhedron
/// file or a basis matrix.
pub fn read_cone_halfspaces(path: Option<&Path>, dim: usize) -> Result<Vec<Halfspace>, CliError> {
    let Some(path) = path else {
        return Ok(pwa_core::pwa::standard_cone_halfspaces(dim));
    };
    let v: Value = read_json(path)?;
    let rows = if v.is_array() {
        let k: OrderingCone = serde_json::from_value(v)
            .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))?;
        k.dual_rows()
            .iter()
            .map(|r| Halfspace::new(r.neg(), pwa_core::Rational::zero()))
            .collect()
    } else {
        let c: ConvexPolyhedron = serde_json::from_value(v)
            .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))?;
        c.into_halfspaces()
    };
    if let Some(h) = rows.iter().find(|h| h.dim() != dim) {
        return Err(pwa_core::Error::DimensionMismatch {
            expected: dim,
            found: h.dim(),
        }
        .into());
    }
    Ok(rows)
}

pub fn parse_point(s: &str) -> Result<Vector, CliError> {
    Ok(s.parse::<Vector>()?)
}

/// Points from `-x` flags followed by the lines of a points file.
pub fn read_points(flags: &[String], file: Option<&Path>) -> Result<Vec<Vector>, CliError> {
    let mut out = flags
        .iter()
        .map(|s| parse_point(s))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(path) = file {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            out.push(parse_point(line)?);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(
            "no points given (use -x or --points)".into(),
        ));
    }
    Ok(out)
}

fn key<T: Serialize>(t: &T) -> String {
    serde_json::to_string(t).expect("serializable")
}

fn sorted_by_key<T: Serialize>(items: Vec<T>) -> Vec<T> {
    let mut keyed: Vec<(String, T)> = items.into_iter().map(|t| (key(&t), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, t)| t).collect()
}

pub fn canonical_polyhedron(c: &ConvexPolyhedron) -> ConvexPolyhedron {
    ConvexPolyhedron::new(c.dim(), sorted_by_key(c.halfspaces().to_vec())).expect("same dimension")
}

pub fn canonical_map(p: &PwaMap) -> PwaMap {
    let pairs: Vec<(ConvexPolyhedron, pwa_core::AffineMap)> = p
        .iter()
        .map(|(c, a)| (canonical_polyhedron(c), a.clone()))
        .collect();
    let (cells, pieces) = sorted_by_key(pairs).into_iter().unzip();
    PwaMap::new(cells, pieces).expect("reordering keeps the structure")
}

pub fn canonical_set(s: &PolyhedralSet) -> PolyhedralSet {
    let pieces = s.pieces().iter().map(canonical_polyhedron).collect();
    PolyhedralSet::new(s.dim(), sorted_by_key(pieces)).expect("same dimension")
}

pub fn canonical_covering(c: &Covering) -> Covering {
    Covering {
        ambient: canonical_polyhedron(&c.ambient),
        cells: sorted_by_key(c.cells.iter().map(canonical_polyhedron).collect()),
    }
}

/// Members sorted where the evaluation rule allows it: groups of a common
/// family keep their column order, and the two groups of a dc form keep
/// their roles.
pub fn canonical_form(f: &CanonicalForm) -> CanonicalForm {
    let groups = match f.kind {
        FormKind::Common => sorted_by_key(f.groups.clone()),
        FormKind::Dc | FormKind::MaxAffine => {
            f.groups.iter().map(|g| sorted_by_key(g.clone())).collect()
        }
        FormKind::MinMax | FormKind::MaxMin => {
            sorted_by_key(f.groups.iter().map(|g| sorted_by_key(g.clone())).collect())
        }
    };
    CanonicalForm::new(f.kind, groups, f.cone.clone()).expect("reordering keeps the structure")
}

fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(
                entries
                    .into_iter()
                    .map(|(k, v)| (k, sort_keys(v)))
                    .collect(),
            )
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        v => v,
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

// Two-space indentation; arrays of scalars stay on one line.
fn write_pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_pretty(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_pretty(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Pretty JSON with sorted object keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(t: &T) -> String {
    let v = sort_keys(serde_json::to_value(t).expect("serializable"));
    let mut s = String::new();
    write_pretty(&v, 0, &mut s);
    s.push('\n');
    s
}

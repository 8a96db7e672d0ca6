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

//! Command-line front end for the `pwa` tool.

pub mod error;
pub mod io;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pwa_core::approx::{interpolate, sup_error, BoxGrid, ExprOracle};
use pwa_core::covering::{refine, solidify, Covering, Partition};
use pwa_core::pwa::{
    compose, coordinates, epigraph, from_graph, graph, lattice_inf, lattice_sup, linear_combine,
    EpiSide, FormBuilder, FormKind, FormLimits, Orientation,
};
use pwa_core::pwl::{is_piecewise_linear, to_linear_forms, PwlDecision, PwlMap};
use pwa_core::{CanonicalForm, PolyhedralSet, PwaMap, Rational, Vector};
use serde_json::json;

use crate::error::CliError;
use crate::io::*;

#[derive(Parser, Debug)]
#[command(name = "pwa", version, about = "Exact piecewise affine maps")]
pub struct Cli {
    /// Write the result to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Point as comma-separated rationals, e.g. "1/2,3". Repeatable.
    #[arg(short = 'x', long = "point", allow_hyphen_values = true)]
    points: Vec<String>,
    /// File with one point per line.
    #[arg(long = "points")]
    points_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConeArg {
    /// Ordering cone as a JSON matrix whose columns are the generators.
    #[arg(long)]
    cone: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FormArgs {
    map: PathBuf,
    #[command(flatten)]
    cone: ConeArg,
    /// Largest number of affine maps a form may hold.
    #[arg(long, default_value_t = FormLimits::default().max_maps)]
    max_maps: usize,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Expression in x (or x1, x2, ...); several outputs separated by ';'.
    #[arg(long)]
    expr: String,
    /// Box as "LOWER:UPPER", e.g. "0,0:1,1".
    #[arg(long = "box")]
    bounds: String,
    /// Boxes per axis, one value for all axes or one per axis.
    #[arg(long, default_value = "4")]
    res: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Minmax,
    Maxmin,
    Dc,
    Common,
    Maxaffine,
}

impl From<KindArg> for FormKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Minmax => FormKind::MinMax,
            KindArg::Maxmin => FormKind::MaxMin,
            KindArg::Dc => FormKind::Dc,
            KindArg::Common => FormKind::Common,
            KindArg::Maxaffine => FormKind::MaxAffine,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the cells cover the space and the pieces agree on overlaps.
    Validate { map: PathBuf },
    /// Evaluate a map at points.
    Eval {
        map: PathBuf,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Evaluate a canonical form at points.
    EvalForm {
        form: PathBuf,
        #[command(flatten)]
        points: PointArgs,
    },
    /// alpha·P + beta·Q.
    Add {
        p: PathBuf,
        q: PathBuf,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        beta: String,
    },
    /// factor·P.
    Scale {
        map: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// Pointwise supremum in the cone order.
    Sup {
        p: PathBuf,
        q: PathBuf,
        #[command(flatten)]
        cone: ConeArg,
    },
    /// Pointwise infimum in the cone order.
    Inf {
        p: PathBuf,
        q: PathBuf,
        #[command(flatten)]
        cone: ConeArg,
    },
    /// OUTER ∘ INNER.
    Compose { outer: PathBuf, inner: PathBuf },
    /// Scalar coordinate maps with respect to the cone basis.
    Coords {
        map: PathBuf,
        #[command(flatten)]
        cone: ConeArg,
    },
    /// Graph of a map as a polyhedral set.
    Graph { map: PathBuf },
    /// Map whose graph is the given polyhedral set.
    FromGraph {
        set: PathBuf,
        /// Number of leading input coordinates.
        #[arg(long)]
        dim_in: usize,
    },
    /// Epigraph {(x, y) : y − P(x) ∈ K}.
    Epi {
        map: PathBuf,
        /// Cone as a JSON matrix of generators or a polyhedron {y : a·y ≤ 0}.
        #[arg(long)]
        cone: Option<PathBuf>,
    },
    /// Hypograph {(x, y) : P(x) − y ∈ K}.
    Hypo {
        map: PathBuf,
        /// Cone as a JSON matrix of generators or a polyhedron {y : a·y ≤ 0}.
        #[arg(long)]
        cone: Option<PathBuf>,
    },
    /// Decide convexity in the cone order; prints true or false.
    IsConvex {
        map: PathBuf,
        #[command(flatten)]
        cone: ConeArg,
    },
    /// Convex map as a supremum of affine maps.
    ToMaxaffine(FormArgs),
    /// inf_i sup_j A_ij form.
    ToMinmax(FormArgs),
    /// sup_i inf_j A_ij form.
    ToMaxmin(FormArgs),
    /// Difference of two suprema of affine maps.
    ToDc(FormArgs),
    /// Family A_ij = C_i − D_j serving both orders of sup and inf.
    ToCommon(FormArgs),
    /// Refine a covering into a partition.
    Refine { covering: PathBuf },
    /// Drop members with empty interior from a covering.
    Solidify { covering: PathBuf },
    /// Decide positive homogeneity.
    IsPwl {
        map: PathBuf,
        /// On a positive decision, write the map with a "pwl" mark here.
        #[arg(long)]
        annotate: Option<PathBuf>,
    },
    /// Canonical form with linear members of a piecewise linear map.
    ToLinear {
        map: PathBuf,
        #[command(flatten)]
        cone: ConeArg,
        #[arg(long, value_enum, default_value = "minmax")]
        kind: KindArg,
    },
    /// Interpolate an expression on a box grid.
    Approx(GridArgs),
    /// Sampled sup-norm error of a map against an expression on a box grid.
    Error {
        map: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Random samples per simplex, on top of the grid vertices.
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Cells of a map on the plane as CSV: halfspaces and an interior point.
    Regions { map: PathBuf },
}

fn rational(s: &str) -> Result<Rational, CliError> {
    Ok(s.parse::<Rational>()?)
}

fn grid(args: &GridArgs) -> Result<BoxGrid, CliError> {
    let (lo, hi) = args
        .bounds
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("box `{}` is not LOWER:UPPER", args.bounds)))?;
    let (lo, hi) = (parse_point(lo)?, parse_point(hi)?);
    let res = args
        .res
        .split(',')
        .map(|r| {
            r.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("invalid resolution `{}`", args.res)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let res = match res.as_slice() {
        [n] => vec![*n; lo.dim()],
        _ => res,
    };
    BoxGrid::new(lo, hi, res).map_err(|e| CliError::Usage(e.to_string()))
}

fn lines(values: &[Vector]) -> String {
    values.iter().map(|v| format!("{v}\n")).collect()
}

fn map_json(p: &PwaMap) -> String {
    to_canonical_json(&canonical_map(p))
}

fn form_json(f: &CanonicalForm) -> String {
    to_canonical_json(&canonical_form(f))
}

fn build_form(args: &FormArgs, kind: FormKind) -> Result<String, CliError> {
    let p = read_map(&args.map)?;
    let cone = read_cone(args.cone.cone.as_deref(), p.dim_out())?;
    let b = FormBuilder::new(&p, &cone)?.with_limits(FormLimits {
        max_maps: args.max_maps,
    });
    let form = match kind {
        FormKind::MaxAffine => b.max_affine()?,
        FormKind::MinMax => b.min_max(Orientation::MinMax)?,
        FormKind::MaxMin => b.min_max(Orientation::MaxMin)?,
        FormKind::Dc => b.dc()?,
        FormKind::Common => b.common()?,
    };
    Ok(form_json(&form))
}

fn lattice(p: &Path, q: &Path, cone: &ConeArg, take_max: bool) -> Result<String, CliError> {
    let (p, q) = (read_map(p)?, read_map(q)?);
    let k = read_cone(cone.cone.as_deref(), p.dim_out())?;
    let r = if take_max {
        lattice_sup(&p, &q, &k)?
    } else {
        lattice_inf(&p, &q, &k)?
    };
    Ok(map_json(&r))
}

fn regions(p: &PwaMap) -> Result<String, CliError> {
    if p.dim_in() != 2 {
        return Err(pwa_core::Error::DimensionMismatch {
            expected: 2,
            found: p.dim_in(),
        }
        .into());
    }
    let mut out = String::from("cell,kind,v1,v2,v3\n");
    for (i, (cell, _)) in canonical_map(p).iter().enumerate() {
        for h in cell.halfspaces() {
            out.push_str(&format!("{i},halfspace,{},{}\n", h.normal, h.bound));
        }
        let point = cell
            .interior_point()
            .or_else(|| cell.relative_interior_point());
        if let Some(x) = point {
            out.push_str(&format!("{i},point,{x}\n"));
        }
    }
    Ok(out)
}

fn execute(command: &Command) -> Result<String, CliError> {
    Ok(match command {
        Command::Validate { map } => {
            let p: PwaMap = read_json(map)?;
            check_valid(&p)?;
            "valid\n".to_string()
        }
        Command::Eval { map, points } => {
            let p = read_map(map)?;
            let xs = read_points(&points.points, points.points_file.as_deref())?;
            lines(
                &xs.iter()
                    .map(|x| p.eval(x))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        }
        Command::EvalForm { form, points } => {
            let f: CanonicalForm = read_json(form)?;
            let ev = f.evaluator();
            let xs = read_points(&points.points, points.points_file.as_deref())?;
            lines(
                &xs.iter()
                    .map(|x| ev.eval(x))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        }
        Command::Add { p, q, alpha, beta } => {
            let (a, b) = (rational(alpha)?, rational(beta)?);
            map_json(&linear_combine(&a, &read_map(p)?, &b, &read_map(q)?)?)
        }
        Command::Scale { map, by } => map_json(&read_map(map)?.scale(&rational(by)?)),
        Command::Sup { p, q, cone } => lattice(p, q, cone, true)?,
        Command::Inf { p, q, cone } => lattice(p, q, cone, false)?,
        Command::Compose { outer, inner } => {
            map_json(&compose(&read_map(outer)?, &read_map(inner)?)?)
        }
        Command::Coords { map, cone } => {
            let p = read_map(map)?;
            let k = read_cone(cone.cone.as_deref(), p.dim_out())?;
            let cs: Vec<PwaMap> = coordinates(&p, &k)?.iter().map(canonical_map).collect();
            to_canonical_json(&cs)
        }
        Command::Graph { map } => to_canonical_json(&canonical_set(&graph(&read_map(map)?))),
        Command::FromGraph { set, dim_in } => {
            let g: PolyhedralSet = read_json(set)?;
            map_json(&from_graph(&g, *dim_in)?)
        }
        Command::Epi { map, cone } | Command::Hypo { map, cone } => {
            let side = if matches!(command, Command::Epi { .. }) {
                EpiSide::Epi
            } else {
                EpiSide::Hypo
            };
            let p = read_map(map)?;
            let k = read_cone_halfspaces(cone.as_deref(), p.dim_out())?;
            to_canonical_json(&canonical_set(&epigraph(&p, &k, side)?))
        }
        Command::IsConvex { map, cone } => {
            let p = read_map(map)?;
            let k = read_cone(cone.cone.as_deref(), p.dim_out())?;
            format!("{}\n", FormBuilder::new(&p, &k)?.is_convex())
        }
        Command::ToMaxaffine(args) => build_form(args, FormKind::MaxAffine)?,
        Command::ToMinmax(args) => build_form(args, FormKind::MinMax)?,
        Command::ToMaxmin(args) => build_form(args, FormKind::MaxMin)?,
        Command::ToDc(args) => build_form(args, FormKind::Dc)?,
        Command::ToCommon(args) => build_form(args, FormKind::Common)?,
        Command::Refine { covering } => {
            let c: Covering = read_json(covering)?;
            let r = refine(&c)?;
            let p: Partition = r.partition;
            let canon = canonical_covering(&Covering::from(p));
            to_canonical_json(&Partition {
                ambient: canon.ambient,
                cells: canon.cells,
            })
        }
        Command::Solidify { covering } => {
            let c: Covering = read_json(covering)?;
            to_canonical_json(&canonical_covering(&solidify(&c)?))
        }
        Command::IsPwl { map, annotate } => {
            let p = read_map(map)?;
            let d = is_piecewise_linear(&p)?;
            if let (Some(path), true) = (annotate, d.is_yes()) {
                let mut v = serde_json::to_value(canonical_map(&p)).expect("serializable");
                v["pwl"] = json!(true);
                write_file(path, &to_canonical_json(&v))?;
            }
            let v = match d {
                PwlDecision::Yes => json!({ "decision": "yes" }),
                PwlDecision::YesOnConicForm => json!({ "decision": "yes_on_conic_form" }),
                PwlDecision::No { x, lambda } => {
                    json!({ "decision": "no", "x": x, "lambda": lambda })
                }
            };
            to_canonical_json(&v)
        }
        Command::ToLinear { map, cone, kind } => {
            let p = read_map(map)?;
            let k = read_cone(cone.cone.as_deref(), p.dim_out())?;
            form_json(&to_linear_forms(&PwlMap::new(p)?, &k, (*kind).into())?)
        }
        Command::Approx(args) => {
            let g = grid(args)?;
            let f = ExprOracle::parse(&args.expr, g.dim())?;
            map_json(&interpolate(&f, &g)?)
        }
        Command::Error {
            map,
            grid: args,
            samples,
        } => {
            let p = read_map(map)?;
            let g = grid(args)?;
            let f = ExprOracle::parse(&args.expr, g.dim())?;
            format!("{}\n", sup_error(&f, &p, &g, *samples)?)
        }
        Command::Regions { map } => regions(&read_map(map)?)?,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Runs one invocation and returns the exit code: 0 on success, 1 on a
/// semantic failure (JSON diagnostic on `err`), 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = execute(&cli.command).and_then(|text| match &cli.output {
        Some(path) => write_file(path, &text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = match &e {
                CliError::Usage(msg) => writeln!(err, "error: {msg}"),
                CliError::Semantic(v) => writeln!(err, "{v}"),
            };
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests;

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

//! Piecewise affine interpolation of a function on a box, extended to the
//! whole space by clamping, and sampled error measurement.

mod expr;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_dim, Error, Result};
use crate::geometry::{AffineMap, Halfspace, Rational, Vector};
use crate::polyhedra::ConvexPolyhedron;
use crate::pwa::{compose, from_coordinates, lattice_inf, lattice_sup, OrderingCone, PwaMap};

pub use expr::Expr;

/// The box `[lower, upper]` cut into `resolution[i]` equal slabs per axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxGrid {
    lower: Vector,
    upper: Vector,
    resolution: Vec<usize>,
}

impl BoxGrid {
    pub fn new(lower: Vector, upper: Vector, resolution: Vec<usize>) -> Result<Self> {
        check_dim(lower.dim(), upper.dim())?;
        check_dim(lower.dim(), resolution.len())?;
        if lower.dim() == 0 {
            return Err(Error::InvariantViolation(
                "grid needs at least one axis".into(),
            ));
        }
        if lower.iter().zip(upper.iter()).any(|(l, u)| l >= u) {
            return Err(Error::InvariantViolation("box needs lower < upper".into()));
        }
        if resolution.contains(&0) {
            return Err(Error::InvariantViolation(
                "resolution must be positive".into(),
            ));
        }
        Ok(BoxGrid {
            lower,
            upper,
            resolution,
        })
    }

    pub fn uniform(lower: Vector, upper: Vector, n: usize) -> Result<Self> {
        let d = lower.dim();
        Self::new(lower, upper, vec![n; d])
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &Vector {
        &self.lower
    }

    pub fn upper(&self) -> &Vector {
        &self.upper
    }

    pub fn resolution(&self) -> &[usize] {
        &self.resolution
    }

    pub fn step(&self, axis: usize) -> Rational {
        (&self.upper[axis] - &self.lower[axis]) / Rational::from(self.resolution[axis] as i64)
    }

    pub fn vertex(&self, index: &[usize]) -> Vector {
        index
            .iter()
            .enumerate()
            .map(|(i, &k)| &self.lower[i] + self.step(i) * Rational::from(k as i64))
            .collect()
    }

    /// All multi-indices with `index[i] < bounds[i]`, last axis fastest.
    fn indices(bounds: &[usize]) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &b in bounds {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..b).map(move |k| {
                        let mut q = p.clone();
                        q.push(k);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn vertex_indices(&self) -> Vec<Vec<usize>> {
        let bounds: Vec<usize> = self.resolution.iter().map(|n| n + 1).collect();
        Self::indices(&bounds)
    }

    pub fn vertices(&self) -> Vec<Vector> {
        self.vertex_indices()
            .iter()
            .map(|k| self.vertex(k))
            .collect()
    }

    /// Lower-corner indices of the grid boxes.
    pub fn box_indices(&self) -> Vec<Vec<usize>> {
        Self::indices(&self.resolution)
    }

    pub fn contains(&self, x: &Vector) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(self.upper.iter()))
            .all(|(v, (l, u))| l <= v && v <= u)
    }
}

/// A map to be approximated, queried pointwise.
pub trait FunctionOracle {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;
    fn eval(&self, x: &Vector) -> Result<Vector>;

    /// Bound on the rounding error of the returned values, for oracles that
    /// are not exact.
    fn rounding_error(&self) -> Option<Rational> {
        None
    }
}

/// Expression oracle; several outputs are separated by `;`.
#[derive(Clone, Debug)]
pub struct ExprOracle {
    dim_in: usize,
    outputs: Vec<Expr>,
}

impl ExprOracle {
    pub fn parse(src: &str, dim_in: usize) -> Result<Self> {
        let outputs = src
            .split(';')
            .map(Expr::parse)
            .collect::<Result<Vec<_>>>()?;
        if let Some(e) = outputs.iter().find(|e| e.arity() > dim_in) {
            return Err(Error::Parse(format!(
                "expression refers to x{} but the input has {dim_in} coordinates",
                e.arity()
            )));
        }
        Ok(ExprOracle { dim_in, outputs })
    }
}

impl FunctionOracle for ExprOracle {
    fn dim_in(&self) -> usize {
        self.dim_in
    }

    fn dim_out(&self) -> usize {
        self.outputs.len()
    }

    fn eval(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim_in, x.dim())?;
        self.outputs.iter().map(|e| e.eval(x)).collect()
    }
}

impl FunctionOracle for PwaMap {
    fn dim_in(&self) -> usize {
        PwaMap::dim_in(self)
    }

    fn dim_out(&self) -> usize {
        PwaMap::dim_out(self)
    }

    fn eval(&self, x: &Vector) -> Result<Vector> {
        PwaMap::eval(self, x).map_err(|e| Error::OracleFailure(e.to_string()))
    }
}

/// Floating-point function rounded to `digits` decimals.
pub struct DecimalOracle<F> {
    dim_in: usize,
    dim_out: usize,
    digits: u32,
    f: F,
}

impl<F: Fn(&[f64]) -> Vec<f64>> DecimalOracle<F> {
    pub fn new(dim_in: usize, dim_out: usize, digits: u32, f: F) -> Self {
        DecimalOracle {
            dim_in,
            dim_out,
            digits,
            f,
        }
    }
}

impl<F: Fn(&[f64]) -> Vec<f64>> FunctionOracle for DecimalOracle<F> {
    fn dim_in(&self) -> usize {
        self.dim_in
    }

    fn dim_out(&self) -> usize {
        self.dim_out
    }

    fn eval(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim_in, x.dim())?;
        let xs: Vec<f64> = x.iter().map(Rational::to_f64).collect();
        let ys = (self.f)(&xs);
        if ys.len() != self.dim_out {
            return Err(Error::OracleFailure(format!(
                "expected {} outputs, got {}",
                self.dim_out,
                ys.len()
            )));
        }
        ys.into_iter()
            .map(|y| {
                Rational::from_decimal(y, self.digits)
                    .ok_or_else(|| Error::OracleFailure(format!("non-finite value {y}")))
            })
            .collect()
    }

    fn rounding_error(&self) -> Option<Rational> {
        Some(Rational::new(1, 2) * Rational::from(10).pow(-(self.digits as i32)))
    }
}

/// Permutations of `0..d` in lexicographic order.
fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..d).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..d).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..d)
            .rev()
            .find(|&j| p[j] > p[i - 1])
            .expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Simplex `{c + Σ t_i h_i e_i : 1 ≥ t_π(0) ≥ … ≥ t_π(d−1) ≥ 0}` of one box,
/// listed with its vertex path.
struct Simplex {
    cell: ConvexPolyhedron,
    path: Vec<Vec<usize>>,
    perm: Vec<usize>,
}

fn simplex(grid: &BoxGrid, corner: &[usize], perm: &[usize]) -> Simplex {
    let d = grid.dim();
    let c = grid.vertex(corner);
    let h: Vec<Rational> = (0..d).map(|i| grid.step(i)).collect();
    let mut hs = Vec::with_capacity(d + 1);
    let first = perm[0];
    hs.push(Halfspace::new(
        Vector::unit(d, first),
        &c[first] + &h[first],
    ));
    for w in perm.windows(2) {
        let (a, b) = (w[0], w[1]);
        // t_b − t_a ≤ 0
        let mut normal = vec![Rational::zero(); d];
        normal[b] = h[b].recip();
        normal[a] = -h[a].recip();
        let bound = &c[b] / &h[b] - &c[a] / &h[a];
        hs.push(Halfspace::new(Vector::new(normal), bound));
    }
    let last = perm[d - 1];
    hs.push(Halfspace::new(Vector::unit(d, last).neg(), -&c[last]));
    let mut path = vec![corner.to_vec()];
    for &axis in perm {
        let mut next = path.last().expect("nonempty").clone();
        next[axis] += 1;
        path.push(next);
    }
    Simplex {
        cell: ConvexPolyhedron::new_unchecked(d, hs),
        path,
        perm: perm.to_vec(),
    }
}

fn simplices(grid: &BoxGrid) -> Vec<Simplex> {
    let perms = permutations(grid.dim());
    grid.box_indices()
        .iter()
        .flat_map(|corner| perms.iter().map(move |p| simplex(grid, corner, p)))
        .collect()
}

/// Coordinatewise `median(lower, x, upper)`, built from lattice operations.
pub fn clamp_map(lower: &Vector, upper: &Vector) -> Result<PwaMap> {
    check_dim(lower.dim(), upper.dim())?;
    let d = lower.dim();
    let k = OrderingCone::standard(1);
    let coords = (0..d)
        .map(|i| {
            let xi = PwaMap::affine(AffineMap::identity(d).coordinate(i));
            let lo = PwaMap::affine(AffineMap::constant(d, Vector::new(vec![lower[i].clone()])));
            let hi = PwaMap::affine(AffineMap::constant(d, Vector::new(vec![upper[i].clone()])));
            lattice_inf(&lattice_sup(&xi, &lo, &k)?, &hi, &k)
        })
        .collect::<Result<Vec<_>>>()?;
    from_coordinates(&coords, &OrderingCone::standard(d))
}

/// Affine interpolation of `f` on every simplex of the standard subdivision
/// of the grid boxes, composed with the clamp onto the box.
pub fn interpolate(f: &dyn FunctionOracle, grid: &BoxGrid) -> Result<PwaMap> {
    check_dim(grid.dim(), f.dim_in())?;
    let d = grid.dim();
    let mut values: HashMap<Vec<usize>, Vector> = HashMap::new();
    for k in grid.vertex_indices() {
        let y = f.eval(&grid.vertex(&k))?;
        check_dim(f.dim_out(), y.dim())?;
        values.insert(k, y);
    }
    let h: Vec<Rational> = (0..d).map(|i| grid.step(i)).collect();
    let mut cells = Vec::new();
    let mut pieces = Vec::new();
    for s in simplices(grid) {
        let corner = grid.vertex(&s.path[0]);
        let base = &values[&s.path[0]];
        let mut rows = vec![vec![Rational::zero(); d]; f.dim_out()];
        let mut offset = base.clone().into_entries();
        for (j, &axis) in s.perm.iter().enumerate() {
            let delta = values[&s.path[j + 1]].sub(&values[&s.path[j]]);
            for (r, dv) in delta.iter().enumerate() {
                let slope = dv / &h[axis];
                offset[r] -= &slope * &corner[axis];
                rows[r][axis] = slope;
            }
        }
        cells.push(s.cell);
        pieces.push(AffineMap::new(
            rows.into_iter().map(Vector::new).collect(),
            Vector::new(offset),
        )?);
    }
    let on_box = PwaMap::new(cells, pieces)?;
    compose(&on_box, &clamp_map(grid.lower(), grid.upper())?)
}

/// Largest max-norm deviation `|f − P|` over the grid vertices and
/// `samples_per_cell` random points per simplex. A lower bound on the true
/// supremum.
pub fn sup_error(
    f: &dyn FunctionOracle,
    p: &PwaMap,
    grid: &BoxGrid,
    samples_per_cell: usize,
) -> Result<Rational> {
    sup_error_with_rng(
        f,
        p,
        grid,
        samples_per_cell,
        &mut ChaCha8Rng::seed_from_u64(0),
    )
}

pub fn sup_error_with_rng<R: Rng>(
    f: &dyn FunctionOracle,
    p: &PwaMap,
    grid: &BoxGrid,
    samples_per_cell: usize,
    rng: &mut R,
) -> Result<Rational> {
    check_dim(grid.dim(), f.dim_in())?;
    check_dim(grid.dim(), p.dim_in())?;
    check_dim(f.dim_out(), p.dim_out())?;
    let mut points = grid.vertices();
    for s in simplices(grid) {
        let corners: Vec<Vector> = s.path.iter().map(|k| grid.vertex(k)).collect();
        for _ in 0..samples_per_cell {
            let weights: Vec<Rational> = corners
                .iter()
                .map(|_| Rational::from(rng.random_range(1..=1000i64)))
                .collect();
            let total: Rational = weights.iter().sum();
            let mut x = Vector::zeros(grid.dim());
            for (w, c) in weights.iter().zip(&corners) {
                x = x.add(&c.scale(&(w / &total)));
            }
            points.push(x);
        }
    }
    let mut worst = Rational::zero();
    for x in &points {
        let diff = f.eval(x)?.sub(&p.eval(x)?);
        worst = worst.max(diff.max_norm());
    }
    Ok(worst)
}

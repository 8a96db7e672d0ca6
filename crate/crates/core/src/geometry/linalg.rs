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

//! Vectors, affine maps and closed halfspaces over exact rationals.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{check_dim, Error, Result};

/// A point of `X` or `Y`, or a linear functional on it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<Rational>);

impl Vector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Vector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Rational::one();
        v
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Vector(values.iter().map(|&v| Rational::from_integer(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn dot(&self, other: &Vector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &Rational) -> Vector {
        Vector(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    /// `self * a + other * b`
    pub fn combine(&self, a: &Rational, other: &Vector, b: &Rational) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| x * a + y * b)
                .collect(),
        )
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Largest absolute coordinate, zero for the empty vector.
    pub fn max_norm(&self) -> Rational {
        self.0
            .iter()
            .map(Rational::abs)
            .fold(Rational::zero(), Rational::max)
    }

    /// Scales by a positive factor so that the first nonzero entry is `±1`.
    pub fn normalized_leading(&self) -> (Vector, Rational) {
        match self.0.iter().find(|a| !a.is_zero()) {
            Some(lead) => {
                let factor = lead.abs().recip();
                (self.scale(&factor), factor)
            }
            None => (self.clone(), Rational::one()),
        }
    }
}

impl Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for Vector {
    fn from(v: Vec<Rational>) -> Self {
        Vector(v)
    }
}

impl FromIterator<Rational> for Vector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

/// Comma separated `p/q` coordinates, the command-line point notation.
impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Vector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Err(Error::Parse("empty point".into()));
        }
        s.split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(Vector)
    }
}

/// `x ↦ A·x + b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawAffine", into = "RawAffine")]
pub struct AffineMap {
    dim_in: usize,
    rows: Vec<Vector>,
    offset: Vector,
}

#[derive(Serialize, Deserialize)]
struct RawAffine {
    #[serde(rename = "A")]
    matrix: Vec<Vector>,
    b: Vector,
}

impl TryFrom<RawAffine> for AffineMap {
    type Error = Error;
    fn try_from(raw: RawAffine) -> Result<Self> {
        AffineMap::new(raw.matrix, raw.b)
    }
}

impl From<AffineMap> for RawAffine {
    fn from(map: AffineMap) -> Self {
        RawAffine {
            matrix: map.rows,
            b: map.offset,
        }
    }
}

impl AffineMap {
    /// Builds `A·x + b` from the rows of `A`. At least one row is required so
    /// that the input dimension is known.
    pub fn new(rows: Vec<Vector>, offset: Vector) -> Result<Self> {
        let dim_in = rows
            .first()
            .map(Vector::dim)
            .ok_or_else(|| Error::Parse("affine map needs at least one row".into()))?;
        for r in &rows {
            check_dim(dim_in, r.dim())?;
        }
        check_dim(rows.len(), offset.dim())?;
        Ok(AffineMap {
            dim_in,
            rows,
            offset,
        })
    }

    pub fn from_integers(rows: &[&[i64]], offset: &[i64]) -> Self {
        let rows = rows.iter().map(|r| Vector::from_integers(r)).collect();
        Self::new(rows, Vector::from_integers(offset)).expect("consistent integer map")
    }

    /// A scalar affine function `x ↦ a·x + c`.
    pub fn scalar(functional: Vector, constant: Rational) -> Self {
        AffineMap {
            dim_in: functional.dim(),
            rows: vec![functional],
            offset: Vector::new(vec![constant]),
        }
    }

    pub fn identity(dim: usize) -> Self {
        AffineMap {
            dim_in: dim,
            rows: (0..dim).map(|i| Vector::unit(dim, i)).collect(),
            offset: Vector::zeros(dim),
        }
    }

    pub fn zero(dim_in: usize, dim_out: usize) -> Self {
        Self::constant(dim_in, Vector::zeros(dim_out))
    }

    pub fn constant(dim_in: usize, value: Vector) -> Self {
        AffineMap {
            dim_in,
            rows: vec![Vector::zeros(dim_in); value.dim()],
            offset: value,
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn offset(&self) -> &Vector {
        &self.offset
    }

    pub fn has_zero_offset(&self) -> bool {
        self.offset.is_zero()
    }

    /// Same linear part, zero offset.
    pub fn linear_part(&self) -> AffineMap {
        AffineMap {
            dim_in: self.dim_in,
            rows: self.rows.clone(),
            offset: Vector::zeros(self.dim_out()),
        }
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim_in, x.dim())?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &Vector) -> Vector {
        self.rows
            .iter()
            .zip(self.offset.iter())
            .map(|(r, b)| r.dot(x) + b)
            .collect()
    }

    /// The scalar function `x ↦ (A·x + b)_i`.
    pub fn coordinate(&self, i: usize) -> AffineMap {
        AffineMap::scalar(self.rows[i].clone(), self.offset[i].clone())
    }

    /// Stacks scalar functions into one vector-valued map.
    pub fn stack(coordinates: &[AffineMap]) -> Result<AffineMap> {
        let mut rows = Vec::new();
        let mut offset = Vec::new();
        for c in coordinates {
            rows.extend(c.rows.iter().cloned());
            offset.extend(c.offset.iter().cloned());
        }
        AffineMap::new(rows, Vector::new(offset))
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &AffineMap, inner: &AffineMap) -> Result<AffineMap> {
        check_dim(outer.dim_in, inner.dim_out())?;
        let rows = outer
            .rows
            .iter()
            .map(|r| {
                (0..inner.dim_in)
                    .map(|j| {
                        r.iter()
                            .zip(&inner.rows)
                            .filter(|(a, _)| !a.is_zero())
                            .map(|(a, row)| a * &row[j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let offset = outer
            .rows
            .iter()
            .zip(outer.offset.iter())
            .map(|(r, b)| r.dot(&inner.offset) + b)
            .collect();
        Ok(AffineMap {
            dim_in: inner.dim_in,
            rows,
            offset,
        })
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &Rational, other: &AffineMap, b: &Rational) -> AffineMap {
        debug_assert_eq!(self.dim_in, other.dim_in);
        debug_assert_eq!(self.dim_out(), other.dim_out());
        AffineMap {
            dim_in: self.dim_in,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(r, s)| r.combine(a, s, b))
                .collect(),
            offset: self.offset.combine(a, &other.offset, b),
        }
    }

    pub fn add(&self, other: &AffineMap) -> AffineMap {
        self.combine(&Rational::one(), other, &Rational::one())
    }

    pub fn sub(&self, other: &AffineMap) -> AffineMap {
        self.combine(&Rational::one(), other, &-Rational::one())
    }

    pub fn scale(&self, factor: &Rational) -> AffineMap {
        AffineMap {
            dim_in: self.dim_in,
            rows: self.rows.iter().map(|r| r.scale(factor)).collect(),
            offset: self.offset.scale(factor),
        }
    }

    /// `M·self` for a square or rectangular matrix given by rows.
    pub fn left_multiply(&self, matrix: &[Vector]) -> AffineMap {
        let rows = matrix
            .iter()
            .map(|m| {
                (0..self.dim_in)
                    .map(|j| {
                        m.iter()
                            .zip(&self.rows)
                            .filter(|(a, _)| !a.is_zero())
                            .map(|(a, row)| a * &row[j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let offset = matrix.iter().map(|m| m.dot(&self.offset)).collect();
        AffineMap {
            dim_in: self.dim_in,
            rows,
            offset,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.offset.is_zero() && self.rows.iter().all(Vector::is_zero)
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (r, b)) in self.rows.iter().zip(self.offset.iter()).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{r} | {b}")?;
        }
        write!(f, "]")
    }
}

/// The closed halfspace `{x : a·x ≤ α}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(rename = "a")]
    pub normal: Vector,
    #[serde(rename = "alpha")]
    pub bound: Rational,
}

impl Halfspace {
    pub fn new(normal: Vector, bound: Rational) -> Self {
        Halfspace { normal, bound }
    }

    pub fn from_integers(normal: &[i64], bound: i64) -> Self {
        Halfspace::new(Vector::from_integers(normal), Rational::from_integer(bound))
    }

    /// `{x : a·x ≥ α}` written in `≤` form.
    pub fn at_least(normal: Vector, bound: Rational) -> Self {
        Halfspace::new(normal.neg(), -bound)
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// The opposite closed halfspace sharing the boundary hyperplane.
    pub fn flipped(&self) -> Halfspace {
        Halfspace::new(self.normal.neg(), -&self.bound)
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.normal.dot(x) <= self.bound
    }

    /// Normal is zero: the halfspace is the whole space (`α ≥ 0`) or empty.
    pub fn is_degenerate(&self) -> bool {
        self.normal.is_zero()
    }

    pub fn is_whole_space(&self) -> bool {
        self.is_degenerate() && !self.bound.is_negative()
    }

    /// `a·x - α`, the signed residual.
    pub fn slack(&self, x: &Vector) -> Rational {
        self.normal.dot(x) - &self.bound
    }
}

impl fmt::Debug for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) <= {}", self.normal, self.bound)
    }
}

/// Rank of a list of row vectors by exact Gaussian elimination.
pub fn rank(rows: &[Vector]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot_row[c];
            for (t, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                *t -= p * &f;
            }
        }
        rank += 1;
    }
    rank
}

/// Inverse of a square matrix given by rows, `None` when singular.
pub fn invert(rows: &[Vector]) -> Option<Vec<Vector>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.entries().to_vec();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            let pivot_row = m[c].clone();
            for (t, p) in m[i].iter_mut().zip(&pivot_row) {
                *t -= p * &f;
            }
        }
    }
    Some(
        m.into_iter()
            .map(|r| Vector::new(r[n..].to_vec()))
            .collect(),
    )
}

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

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{invert, AffineMap, Vector};

/// Lattice order on `Y` whose positive cone is generated by a basis
/// `e_1, …, e_n`: `y ⪰ 0` iff every dual coordinate `e_i*(y)` is nonnegative.
///
/// Serialized as the matrix `E` row by row; its columns are the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingCone {
    /// rows of `E`
    basis: Vec<Vector>,
    /// rows of `E⁻¹`, i.e. the dual functionals
    dual: Vec<Vector>,
    standard: bool,
}

impl OrderingCone {
    pub fn standard(dim: usize) -> Self {
        let rows: Vec<Vector> = (0..dim).map(|i| Vector::unit(dim, i)).collect();
        OrderingCone {
            basis: rows.clone(),
            dual: rows,
            standard: true,
        }
    }

    /// From the rows of `E`.
    pub fn from_matrix(rows: Vec<Vector>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::SingularCone);
        }
        for r in &rows {
            check_dim(n, r.dim())?;
        }
        let dual = invert(&rows).ok_or(Error::SingularCone)?;
        let standard = rows
            .iter()
            .enumerate()
            .all(|(i, r)| *r == Vector::unit(n, i));
        Ok(OrderingCone {
            basis: rows,
            dual,
            standard,
        })
    }

    /// From generator columns `e_1, …, e_n`.
    pub fn from_generators(generators: &[Vector]) -> Result<Self> {
        let n = generators.len();
        for g in generators {
            check_dim(n, g.dim())?;
        }
        let rows = (0..n)
            .map(|r| generators.iter().map(|g| g[r].clone()).collect())
            .collect();
        Self::from_matrix(rows)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    pub fn matrix(&self) -> &[Vector] {
        &self.basis
    }

    pub fn dual_rows(&self) -> &[Vector] {
        &self.dual
    }

    pub fn generator(&self, i: usize) -> Vector {
        self.basis.iter().map(|r| r[i].clone()).collect()
    }

    /// `E⁻¹ y`
    pub fn coords(&self, y: &Vector) -> Vector {
        if self.standard {
            return y.clone();
        }
        self.dual.iter().map(|r| r.dot(y)).collect()
    }

    /// `E c`
    pub fn from_coords(&self, c: &Vector) -> Vector {
        if self.standard {
            return c.clone();
        }
        self.basis.iter().map(|r| r.dot(c)).collect()
    }

    /// `E⁻¹ ∘ map`
    pub fn map_coords(&self, map: &AffineMap) -> AffineMap {
        if self.standard {
            return map.clone();
        }
        map.left_multiply(&self.dual)
    }

    /// `E ∘ map`
    pub fn map_from_coords(&self, map: &AffineMap) -> AffineMap {
        if self.standard {
            return map.clone();
        }
        map.left_multiply(&self.basis)
    }

    pub fn contains(&self, y: &Vector) -> bool {
        self.dual.iter().all(|r| !r.dot(y).is_negative())
    }

    /// `a ⪯ b`
    pub fn leq(&self, a: &Vector, b: &Vector) -> bool {
        self.contains(&b.sub(a))
    }

    /// Coordinatewise max in cone coordinates.
    pub fn sup(&self, a: &Vector, b: &Vector) -> Vector {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let c: Vector = ca
            .iter()
            .zip(cb.iter())
            .map(|(x, y)| x.max(y).clone())
            .collect();
        self.from_coords(&c)
    }

    pub fn inf(&self, a: &Vector, b: &Vector) -> Vector {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let c: Vector = ca
            .iter()
            .zip(cb.iter())
            .map(|(x, y)| x.min(y).clone())
            .collect();
        self.from_coords(&c)
    }
}

impl Serialize for OrderingCone {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrderingCone {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vector>::deserialize(d)?;
        OrderingCone::from_matrix(rows).map_err(serde::de::Error::custom)
    }
}

impl Default for OrderingCone {
    fn default() -> Self {
        Self::standard(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skewed_cone() {
        // generators (1,0) and (1,1)
        let k = OrderingCone::from_generators(&[
            Vector::from_integers(&[1, 0]),
            Vector::from_integers(&[1, 1]),
        ])
        .unwrap();
        assert!(!k.is_standard());
        let y = Vector::from_integers(&[3, 1]);
        assert_eq!(k.coords(&y), Vector::from_integers(&[2, 1]));
        assert_eq!(k.from_coords(&k.coords(&y)), y);
        assert!(k.contains(&y));
        assert!(!k.contains(&Vector::from_integers(&[0, 1])));
        let a = Vector::from_integers(&[1, 0]);
        let b = Vector::from_integers(&[0, 1]);
        // coords: a = (1,0), b = (-1,1), sup = (1,1) -> (2,1)
        assert_eq!(k.sup(&a, &b), Vector::from_integers(&[2, 1]));
        assert!(k.leq(&a, &k.sup(&a, &b)) && k.leq(&b, &k.sup(&a, &b)));
    }

    #[test]
    fn singular_rejected() {
        let r = OrderingCone::from_matrix(vec![
            Vector::from_integers(&[1, 2]),
            Vector::from_integers(&[2, 4]),
        ]);
        assert_eq!(r, Err(Error::SingularCone));
    }

    #[test]
    fn serde_round_trip() {
        let k = OrderingCone::from_matrix(vec![
            Vector::from_integers(&[1, 1]),
            Vector::from_integers(&[0, 1]),
        ])
        .unwrap();
        let s = serde_json::to_string(&k).unwrap();
        assert_eq!(s, r#"[["1","1"],["0","1"]]"#);
        assert_eq!(serde_json::from_str::<OrderingCone>(&s).unwrap(), k);
    }
}

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

//! Piecewise linear maps: positively homogeneous piecewise affine maps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{AffineMap, Halfspace, LpOutcome, Rational, Vector};
use crate::polyhedra::ConvexPolyhedron;
use crate::pwa::{
    linear_combine, CanonicalForm, FormBuilder, FormKind, OrderingCone, Orientation, PwaMap,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PwlDecision {
    /// Cells of the solid partition are cones and all pieces are linear.
    Yes,
    /// `P(λx) ≠ λP(x)`.
    No { x: Vector, lambda: Rational },
    /// The map coincides with its conic form (tangent cones at the origin
    /// carrying the linear parts of the pieces there).
    YesOnConicForm,
}

impl PwlDecision {
    pub fn is_yes(&self) -> bool {
        !matches!(self, PwlDecision::No { .. })
    }
}

/// A piecewise affine map known to be positively homogeneous, together with
/// a presentation on conic cells with linear pieces.
#[derive(Clone, Debug)]
pub struct PwlMap {
    map: PwaMap,
    conic: PwaMap,
}

impl PwlMap {
    pub fn new(map: PwaMap) -> Result<Self> {
        let refined = map.refined()?;
        let conic = match decide(&map, &refined)? {
            PwlDecision::Yes => refined,
            PwlDecision::YesOnConicForm => conic_form(&refined)?,
            PwlDecision::No { .. } => return Err(Error::NotPiecewiseLinear),
        };
        Ok(PwlMap { map, conic })
    }

    pub fn map(&self) -> &PwaMap {
        &self.map
    }

    /// The same map on conic cells with linear pieces.
    pub fn conic_form(&self) -> &PwaMap {
        &self.conic
    }

    pub fn into_inner(self) -> PwaMap {
        self.map
    }
}

impl TryFrom<PwaMap> for PwlMap {
    type Error = Error;

    fn try_from(map: PwaMap) -> Result<Self> {
        PwlMap::new(map)
    }
}

fn is_cone(cell: &ConvexPolyhedron) -> bool {
    cell.without_redundancy()
        .halfspaces()
        .iter()
        .all(|h| h.bound.is_zero())
}

/// Exact decision of `P(λx) = λP(x)` for all `x` and `λ ≥ 0`.
pub fn is_piecewise_linear(p: &PwaMap) -> Result<PwlDecision> {
    decide(p, &p.refined()?)
}

fn decide(p: &PwaMap, refined: &PwaMap) -> Result<PwlDecision> {
    if refined.pieces().iter().all(AffineMap::has_zero_offset)
        && refined.cells().iter().all(is_cone)
    {
        return Ok(PwlDecision::Yes);
    }
    if let Some((x, lambda)) = sampled_violation(p)? {
        return Ok(PwlDecision::No { x, lambda });
    }
    let origin = Vector::zeros(p.dim_in());
    if !p.eval(&origin)?.is_zero() {
        return Ok(PwlDecision::No {
            x: origin,
            lambda: Rational::zero(),
        });
    }
    let conic = conic_form(refined)?;
    let diff = linear_combine(&Rational::one(), refined, &-Rational::one(), &conic)?;
    for (cell, piece) in diff.iter() {
        for s in 0..piece.dim_out() {
            if let Some(w) = nonzero_point(cell, &piece.rows()[s], &piece.offset()[s]) {
                let lambda = scaling_witness(p, &w)?.ok_or_else(|| {
                    Error::InvariantViolation("no homogeneity witness near the origin".into())
                })?;
                return Ok(PwlDecision::No { x: w, lambda });
            }
        }
    }
    Ok(PwlDecision::YesOnConicForm)
}

fn violates(p: &PwaMap, x: &Vector, lambda: &Rational) -> Result<bool> {
    Ok(p.eval(&x.scale(lambda))? != p.eval(x)?.scale(lambda))
}

fn sampled_violation(p: &PwaMap) -> Result<Option<(Vector, Rational)>> {
    let n = p.dim_in();
    let mut xs: Vec<Vector> = Vec::new();
    for i in 0..n {
        xs.push(Vector::unit(n, i));
        xs.push(Vector::unit(n, i).neg());
    }
    xs.push(Vector::new(vec![Rational::one(); n]));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..32 {
        xs.push(
            (0..n)
                .map(|_| Rational::new(rng.random_range(-40..=40), rng.random_range(1..=8)))
                .collect(),
        );
    }
    let lambdas = [
        Rational::from_integer(2),
        Rational::new(1, 2),
        Rational::from_integer(3),
        Rational::zero(),
    ];
    for x in &xs {
        for l in &lambdas {
            if violates(p, x, l)? {
                return Ok(Some((x.clone(), l.clone())));
            }
        }
    }
    Ok(None)
}

/// Tangent cones at the origin of the cells through it, carrying the linear
/// parts of their pieces. Assumes the cells cover the space.
pub fn conic_form(p: &PwaMap) -> Result<PwaMap> {
    let origin = Vector::zeros(p.dim_in());
    let mut cells = Vec::new();
    let mut pieces = Vec::new();
    for (cell, a) in p.iter() {
        if !cell.contains(&origin)? {
            continue;
        }
        let active: Vec<Halfspace> = cell
            .halfspaces()
            .iter()
            .filter(|h| h.bound.is_zero())
            .cloned()
            .collect();
        cells.push(ConvexPolyhedron::new(p.dim_in(), active)?);
        pieces.push(a.linear_part());
    }
    PwaMap::new(cells, pieces)
}

/// A point of `cell` where `a·x + b ≠ 0`, if any. The extra cap keeps the
/// LPs bounded.
fn nonzero_point(cell: &ConvexPolyhedron, a: &Vector, b: &Rational) -> Option<Vector> {
    if a.is_zero() {
        return (!b.is_zero()).then(|| cell.feasible_point()).flatten();
    }
    let one = Rational::one();
    let capped = cell
        .with_halfspace(Halfspace::new(a.clone(), &one - b))
        .ok()?;
    if let LpOutcome::Optimal { value, witness } = capped.maximize(a) {
        if (value + b).is_positive() {
            return Some(witness);
        }
    }
    let capped = cell
        .with_halfspace(Halfspace::new(a.neg(), &one + b))
        .ok()?;
    if let LpOutcome::Optimal { value, witness } = capped.minimize(a) {
        if (value + b).is_negative() {
            return Some(witness);
        }
    }
    None
}

/// Near the origin `P` agrees with its conic form, so shrinking `x` far
/// enough exposes any disagreement between the two.
fn scaling_witness(p: &PwaMap, x: &Vector) -> Result<Option<Rational>> {
    let mut lambda = Rational::from_integer(2);
    let half = Rational::new(1, 2);
    for _ in 0..128 {
        if violates(p, x, &lambda)? {
            return Ok(Some(lambda));
        }
        lambda = if lambda > Rational::one() {
            half.clone()
        } else {
            &lambda * &half
        };
    }
    Ok(None)
}

/// Canonical form of a piecewise linear map with linear members only.
pub fn to_linear_forms(p: &PwlMap, cone: &OrderingCone, kind: FormKind) -> Result<CanonicalForm> {
    let b = FormBuilder::new(p.conic_form(), cone)?;
    let form = match kind {
        FormKind::MinMax => b.min_max(Orientation::MinMax)?,
        FormKind::MaxMin => b.min_max(Orientation::MaxMin)?,
        FormKind::Dc => b.dc()?,
        FormKind::MaxAffine => b.max_affine()?,
        FormKind::Common => b.common()?,
    };
    if form.members().all(AffineMap::has_zero_offset) {
        Ok(form)
    } else {
        Err(Error::NonzeroOffsetProduced)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwa::{lattice_sup, OrderingCone};

    fn pt(s: &str) -> Vector {
        s.parse().unwrap()
    }

    fn lin(a: i64, b: i64) -> PwaMap {
        PwaMap::affine(AffineMap::from_integers(&[&[a]], &[b]))
    }

    fn abs() -> PwaMap {
        lattice_sup(&lin(1, 0), &lin(-1, 0), &OrderingCone::standard(1)).unwrap()
    }

    #[test]
    fn cones_and_linear_pieces() {
        let max = PwaMap::new(
            vec![
                ConvexPolyhedron::from_integers(2, &[(&[1, -1], 0)]),
                ConvexPolyhedron::from_integers(2, &[(&[-1, 1], 0)]),
            ],
            vec![
                AffineMap::from_integers(&[&[0, 1]], &[0]),
                AffineMap::from_integers(&[&[1, 0]], &[0]),
            ],
        )
        .unwrap();
        assert_eq!(is_piecewise_linear(&max).unwrap(), PwlDecision::Yes);
        assert_eq!(is_piecewise_linear(&abs()).unwrap(), PwlDecision::Yes);
    }

    #[test]
    fn shifted_line() {
        assert_eq!(
            is_piecewise_linear(&lin(1, 1)).unwrap(),
            PwlDecision::No {
                x: pt("1"),
                lambda: Rational::from_integer(2)
            }
        );
    }

    #[test]
    fn homogeneous_map_on_non_conic_cells() {
        // 2x split at x = 1 into two identical pieces
        let p = PwaMap::new(
            vec![
                ConvexPolyhedron::from_integers(1, &[(&[1], 1)]),
                ConvexPolyhedron::from_integers(1, &[(&[-1], -1)]),
            ],
            vec![AffineMap::from_integers(&[&[2]], &[0]); 2],
        )
        .unwrap();
        assert_eq!(
            is_piecewise_linear(&p).unwrap(),
            PwlDecision::YesOnConicForm
        );
        let pwl = PwlMap::new(p).unwrap();
        let f = to_linear_forms(&pwl, &OrderingCone::standard(1), FormKind::MaxMin).unwrap();
        assert_eq!(f.size(), 1);
    }

    #[test]
    fn far_away_kink_is_found() {
        // x for x ≤ 1000, 2x − 1000 beyond: homogeneous near 0 only
        let p = PwaMap::new(
            vec![
                ConvexPolyhedron::from_integers(1, &[(&[1], 1000)]),
                ConvexPolyhedron::from_integers(1, &[(&[-1], -1000)]),
            ],
            vec![
                AffineMap::from_integers(&[&[1]], &[0]),
                AffineMap::from_integers(&[&[2]], &[-1000]),
            ],
        )
        .unwrap();
        let PwlDecision::No { x, lambda } = is_piecewise_linear(&p).unwrap() else {
            panic!("expected a witness");
        };
        assert!(violates(&p, &x, &lambda).unwrap());
        assert!(matches!(PwlMap::new(p), Err(Error::NotPiecewiseLinear)));
    }

    #[test]
    fn linear_forms_of_abs() {
        let pwl = PwlMap::new(abs()).unwrap();
        let k = OrderingCone::standard(1);
        let f = to_linear_forms(&pwl, &k, FormKind::MaxMin).unwrap();
        let members: Vec<_> = f.members().cloned().collect();
        assert_eq!(members.len(), 2);
        assert!(members.iter().all(AffineMap::has_zero_offset));
        let l = to_linear_forms(&PwlMap::new(lin(3, 0)).unwrap(), &k, FormKind::MinMax).unwrap();
        assert_eq!(l.size(), 1);
    }
}

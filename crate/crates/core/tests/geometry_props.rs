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

//! Exact arithmetic, affine maps and the LP kernel against independent
//! oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use pwa_core::geometry::{solve_lp, AffineMap, Direction, Halfspace, LpOutcome, Rational, Vector};

fn big(r: &Rational) -> BigRational {
    r.into()
}

fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (-50i64..=50, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q)),
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(p, q)| Rational::new(p, q)),
    ]
}

fn small_vec(dim: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(
        (-9i64..=9, 1i64..=4).prop_map(|(p, q)| Rational::new(p, q)),
        dim,
    )
    .prop_map(Vector::new)
}

fn affine(dim_in: usize, dim_out: usize) -> impl Strategy<Value = AffineMap> {
    (
        proptest::collection::vec(small_vec(dim_in), dim_out),
        small_vec(dim_out),
    )
        .prop_map(|(rows, b)| AffineMap::new(rows, b).unwrap())
}

proptest! {
    #[test]
    fn field_operations_are_exact(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        prop_assert_eq!(big(&(&a + &b)), big(&a) + big(&b));
        prop_assert_eq!(big(&(&a * &b)), big(&a) * big(&b));
        prop_assert_eq!(a.cmp(&b), big(&a).cmp(&big(&b)));
    }

    #[test]
    fn canonical_text_round_trip(a in rational()) {
        let s = a.to_string();
        let back: Rational = s.parse().unwrap();
        prop_assert_eq!(&back, &a);
        let q = big(&a);
        prop_assert!(q.denom() > &BigInt::zero());
        prop_assert_eq!(num_integer::Integer::gcd(q.numer(), q.denom()), BigInt::from(1));
    }

    #[test]
    fn compose_matches_pointwise(
        outer in affine(2, 3),
        inner in affine(4, 2),
        xs in proptest::collection::vec(small_vec(4), 20),
    ) {
        let c = AffineMap::compose(&outer, &inner).unwrap();
        for x in &xs {
            prop_assert_eq!(c.apply(x).unwrap(), outer.apply(&inner.apply(x).unwrap()).unwrap());
        }
    }

    #[test]
    fn compose_is_associative(
        f in affine(2, 2),
        g in affine(3, 2),
        h in affine(2, 3),
        xs in proptest::collection::vec(small_vec(2), 10),
    ) {
        let left = AffineMap::compose(&f, &AffineMap::compose(&g, &h).unwrap()).unwrap();
        let right = AffineMap::compose(&AffineMap::compose(&f, &g).unwrap(), &h).unwrap();
        for x in &xs {
            prop_assert_eq!(left.apply(x).unwrap(), right.apply(x).unwrap());
        }
    }
}

/// Solves the square system `rows · x = rhs` by Gaussian elimination.
fn solve_square(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (t, p) in m[r].iter_mut().zip(&pivot_row) {
                    *t = &*t - &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Maximum of `c·x` over the vertices of a bounded polytope.
fn brute_force_max(
    c: &[BigRational],
    hs: &[(Vec<BigRational>, BigRational)],
) -> Option<BigRational> {
    let n = c.len();
    let mut best: Option<BigRational> = None;
    for idx in subsets(hs.len(), n) {
        let rows: Vec<Vec<BigRational>> = idx.iter().map(|&i| hs[i].0.clone()).collect();
        let rhs: Vec<BigRational> = idx.iter().map(|&i| hs[i].1.clone()).collect();
        let Some(x) = solve_square(&rows, &rhs) else {
            continue;
        };
        let feasible = hs.iter().all(|(a, b)| {
            let lhs: BigRational = a.iter().zip(&x).map(|(p, q)| p * q).sum();
            &lhs <= b
        });
        if feasible {
            let v: BigRational = c.iter().zip(&x).map(|(p, q)| p * q).sum();
            if best.as_ref().is_none_or(|b| &v > b) {
                best = Some(v);
            }
        }
    }
    best
}

fn lp_instance() -> impl Strategy<Value = (Vector, Vec<Halfspace>)> {
    (1usize..=3).prop_flat_map(|n| {
        let h = (proptest::collection::vec(-4i64..=4, n), -6i64..=6)
            .prop_map(|(a, b)| Halfspace::from_integers(&a, b));
        (
            proptest::collection::vec(-5i64..=5, n).prop_map(|c| Vector::from_integers(&c)),
            proptest::collection::vec(h, 0..=6),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lp_matches_vertex_enumeration((c, mut hs) in lp_instance()) {
        let n = c.dim();
        for i in 0..n {
            hs.push(Halfspace::new(Vector::unit(n, i), Rational::from(7)));
            hs.push(Halfspace::new(Vector::unit(n, i).neg(), Rational::from(7)));
        }
        let raw: Vec<(Vec<BigRational>, BigRational)> = hs
            .iter()
            .map(|h| (h.normal.iter().map(big).collect(), big(&h.bound)))
            .collect();
        let cb: Vec<BigRational> = c.iter().map(big).collect();
        let oracle = brute_force_max(&cb, &raw);
        match solve_lp(&c, &hs, Direction::Maximize).unwrap() {
            LpOutcome::Optimal { value, witness } => {
                prop_assert!(hs.iter().all(|h| h.contains(&witness)));
                prop_assert_eq!(c.dot(&witness), value.clone());
                prop_assert_eq!(Some(big(&value)), oracle);
            }
            LpOutcome::Infeasible => prop_assert!(oracle.is_none()),
            LpOutcome::Unbounded => prop_assert!(false, "box-bounded LP reported unbounded"),
        }
        let neg = c.neg();
        if let LpOutcome::Optimal { value, .. } = solve_lp(&neg, &hs, Direction::Minimize).unwrap() {
            let negb: Vec<BigRational> = neg.iter().map(big).collect();
            let mut worst: Option<BigRational> = None;
            if let Some(m) = brute_force_max(&negb.iter().map(|v| -v).collect::<Vec<_>>(), &raw) {
                worst = Some(-m);
            }
            prop_assert_eq!(Some(big(&value)), worst);
        }
    }
}

#[test]
fn unbounded_and_infeasible_examples() {
    let x_le_2 = [Halfspace::from_integers(&[1], 2)];
    assert_eq!(
        solve_lp(&Vector::from_integers(&[1]), &x_le_2, Direction::Maximize).unwrap(),
        LpOutcome::Optimal {
            value: Rational::from(2),
            witness: Vector::from_integers(&[2])
        }
    );
    let ray = [Halfspace::from_integers(&[-1], 0)];
    assert_eq!(
        solve_lp(&Vector::from_integers(&[1]), &ray, Direction::Maximize).unwrap(),
        LpOutcome::Unbounded
    );
}

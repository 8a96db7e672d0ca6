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

//! Canonical forms against direct evaluation on random maps.

use pwa_core::pwa::{FormBuilder, OrderingCone, Orientation, PwaMap};
use pwa_core::random;
use pwa_core::Vector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check_forms(p: &PwaMap, cone: &OrderingCone, points: &[Vector]) {
    let b = FormBuilder::new(p, cone).unwrap();
    let direct: Vec<Vector> = points.iter().map(|x| p.eval(x).unwrap()).collect();
    let mut forms = vec![
        b.min_max(Orientation::MinMax).unwrap(),
        b.min_max(Orientation::MaxMin).unwrap(),
        b.dc().unwrap(),
    ];
    let common = b.common().unwrap();
    if b.is_convex() {
        forms.push(b.max_affine().unwrap());
    }
    for f in &forms {
        let ev = f.evaluator();
        for (x, y) in points.iter().zip(&direct) {
            assert_eq!(&ev.eval(x).unwrap(), y, "{:?} at {x}", f.kind);
        }
    }
    let ev = common.evaluator();
    for (x, y) in points.iter().zip(&direct) {
        assert_eq!(&ev.eval(x).unwrap(), y);
        assert_eq!(&ev.eval_transposed(x).unwrap(), y);
    }
}

#[test]
fn scalar_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cone = OrderingCone::standard(1);
    for dim_in in 1..=3 {
        for _ in 0..4 {
            let p = random::pwa_map(&mut rng, dim_in, 1, 8);
            let pts = random::sample_points(&mut rng, dim_in, 300);
            check_forms(&p, &cone, &pts);
        }
    }
}

#[test]
fn vector_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for dim_in in 1..=3 {
        for _ in 0..3 {
            let p = random::pwa_map(&mut rng, dim_in, 2, 8);
            let pts = random::sample_points(&mut rng, dim_in, 300);
            check_forms(&p, &OrderingCone::standard(2), &pts);
        }
    }
}

#[test]
fn skewed_cone() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cone = OrderingCone::from_generators(&[
        Vector::from_integers(&[1, 0]),
        Vector::from_integers(&[1, 2]),
    ])
    .unwrap();
    for _ in 0..3 {
        let p = random::pwa_map(&mut rng, 2, 2, 8);
        let pts = random::sample_points(&mut rng, 2, 200);
        check_forms(&p, &cone, &pts);
    }
}

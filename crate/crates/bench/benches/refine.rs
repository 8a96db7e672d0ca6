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

use criterion::{criterion_group, criterion_main, Criterion};
use pwa_bench::{coverings, maps};
use pwa_core::covering::{refine, solid_partition};
use std::hint::black_box;

fn bench_refine(c: &mut Criterion) {
    let cs = coverings(4, 8);
    c.bench_function("refine_plane_coverings", |b| {
        b.iter(|| {
            for cov in &cs {
                black_box(refine(cov).unwrap());
            }
        })
    });
    c.bench_function("solid_partition_plane_coverings", |b| {
        b.iter(|| {
            for cov in &cs {
                black_box(solid_partition(cov).unwrap());
            }
        })
    });
    let ms = maps(5, 4, 3, 1, 8);
    c.bench_function("refined_maps_3d", |b| {
        b.iter(|| {
            for m in &ms {
                black_box(m.refined().unwrap());
            }
        })
    });
}

criterion_group!(benches, bench_refine);
criterion_main!(benches);

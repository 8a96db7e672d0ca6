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

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pwa_bench::{objective, polytope};
use pwa_core::geometry::{solve_lp, Direction};
use std::hint::black_box;

fn bench_lp(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_lp");
    for (dim, rows) in [(2, 8), (3, 16), (4, 24), (6, 40)] {
        let p = polytope(1, dim, rows);
        let obj = objective(2, dim);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{dim}d_{rows}")),
            &p,
            |b, p| b.iter(|| solve_lp(black_box(&obj), p.halfspaces(), Direction::Maximize)),
        );
    }
    group.finish();

    let p = polytope(3, 3, 30);
    c.bench_function("without_redundancy_3d_30", |b| {
        b.iter(|| black_box(&p).without_redundancy())
    });
}

criterion_group!(benches, bench_lp);
criterion_main!(benches);

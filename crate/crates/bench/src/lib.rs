//! Criterion benchmarks for the `harnack` kernels live in `benches/`.

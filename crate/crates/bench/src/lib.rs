//! Criterion benchmarks for the exactexpo kernels; see `benches/kernels.rs`.

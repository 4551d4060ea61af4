//! Criterion benchmarks for the main kernels; see `benches/kernels.rs`.

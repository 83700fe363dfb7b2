//! Criterion benchmarks for the `infologic` crate live in `benches/`.

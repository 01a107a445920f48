//! Criterion benchmarks for the transform routes; see `benches/`.

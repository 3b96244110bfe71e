//! Criterion benchmarks for the `intertwine` crate; see `benches/`.

//! Criterion benchmarks for `grassmann-core`; see `benches/`.

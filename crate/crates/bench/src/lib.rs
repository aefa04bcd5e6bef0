//! Criterion benchmarks for `ras-core`; see `benches/`.

//! Criterion benchmarks for `sodirac-core`; see `benches/`.

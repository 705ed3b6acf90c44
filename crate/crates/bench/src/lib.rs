//! Criterion benchmarks for the `fanodef` pipeline live in `benches/`.

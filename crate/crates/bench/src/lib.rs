//! Criterion benchmarks for `gausscoh`; see `benches/`.

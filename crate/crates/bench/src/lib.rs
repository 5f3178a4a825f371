//! Criterion benchmarks for `gsproto-core`; see `benches/`.

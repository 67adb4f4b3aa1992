//! Criterion benchmarks for the receive chain live in `benches/`.

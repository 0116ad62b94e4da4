//! Criterion benchmarks for the analysis routines live in `benches/`.

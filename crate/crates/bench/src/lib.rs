//! Criterion benchmarks for the coxsheaf pipeline live in `benches/`.

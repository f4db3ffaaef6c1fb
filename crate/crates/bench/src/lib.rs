//! Placeholder library; the benchmarks live in `benches/`.

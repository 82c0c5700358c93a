//! Benchmark-only crate; see `benches/persistence.rs`.

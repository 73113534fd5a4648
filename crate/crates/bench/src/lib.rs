//! Benchmark-only crate: see `benches/core_benches.rs`, run with
//! `cargo bench -p qlucas-bench`.

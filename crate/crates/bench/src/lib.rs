//! Benchmarks for `ivfmt-core`; see `benches/intervals.rs`.

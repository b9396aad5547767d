//! Criterion benchmarks for `homsphere`; see `benches/`.

use homsphere::MetricTriple;

/// Fixed generic triple used across benchmarks.
pub fn generic_triple() -> MetricTriple {
    MetricTriple::new(2.3, 1.1, 0.4).expect("positive parameters")
}

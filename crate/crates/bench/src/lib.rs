//! Fixture rings shared by the benchmarks.

use ringlab::{direct_sum, normalize_factors, triangular_ring, FiniteRing, InvariantFactors};

pub fn triangular(p: u64) -> FiniteRing {
    triangular_ring(p).expect("p is prime")
}

pub fn mixed_sum() -> FiniteRing {
    direct_sum(&triangular(2), &triangular(3)).expect("order 216 is within limits")
}

pub fn group(factors: &[u64]) -> InvariantFactors {
    normalize_factors(factors).expect("small group")
}

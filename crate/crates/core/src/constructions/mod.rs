//! Standard ring families, file formats, exhaustive enumeration and
//! isomorphism reduction.

mod corpus;
mod dedup;
mod enumerate;
mod file;

pub use corpus::{Corpus, CorpusEntry, RingInvariants, Section};
pub use dedup::{dedup_isomorphic, Canonicalizer, DEFAULT_AUTOMORPHISM_BUDGET};
pub use enumerate::{
    enumerate_group, enumerate_tables, search_bits, DedupMode, EnumeratedRing, Enumeration,
    EnumerationOptions, DEFAULT_BUDGET_BITS,
};
pub use file::{ring_from_file, ring_to_file, RingDocument, FORMAT_VERSION};

use crate::abelian::{normalize_factors, GroupElement, InvariantFactors};
use crate::arith::is_prime;
use crate::error::{GroupError, RingError};
use crate::ring::{make_ring, FiniteRing, StructureTable};

/// 2x2 upper-triangular matrices over `Z_p` on generators `e11, e12, e22`.
pub fn triangular_ring(p: u64) -> Result<FiniteRing, RingError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p).into());
    }
    let g = normalize_factors(&[p, p, p])?;
    let unit = |i: usize| {
        let mut c = vec![0; 3];
        c[i] = 1;
        GroupElement(c)
    };
    let mut t = StructureTable::zero(&g);
    t.set(0, 0, unit(0));
    t.set(0, 1, unit(1));
    t.set(1, 2, unit(1));
    t.set(2, 2, unit(2));
    make_ring(g, t)
}

/// The ring with every product zero.
pub fn zero_ring(g: InvariantFactors) -> FiniteRing {
    let t = StructureTable::zero(&g);
    make_ring(g, t).expect("the zero table is always a ring")
}

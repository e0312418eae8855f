//! Finite rings given by structure constants.
//!
//! The crate computes centralizers, centers, commuting probabilities and
//! central-quotient types of finite (not necessarily unital) rings, builds
//! corpora of small rings by exhaustive enumeration, and checks a registry
//! of claims about `n`-centralizer rings against those corpora.

pub mod abelian;
pub mod arith;
pub mod centralizer;
pub mod constructions;
pub mod error;
pub mod probability;
pub mod ring;
pub mod verifier;

pub use abelian::{
    groups_of_order, identify_type, is_cyclic, normalize_factors, quotient_census,
    subgroup_generated, GroupElement, InvariantFactors, OrderCensus, Subgroup,
};
pub use centralizer::{
    center, centralizer, centralizer_family, coset_profile, CentralizerFamily, CosetProfile,
};
pub use constructions::{
    dedup_isomorphic, enumerate_tables, ring_from_file, ring_to_file, triangular_ring, zero_ring,
    Corpus, EnumerationOptions, RingInvariants,
};
pub use error::{EnumerationError, FileError, GroupError, RingError, VerifyError};
pub use probability::{pr_centralizer_sum, pr_formula_pp, pr_pairs, Rational};
pub use ring::{direct_sum, make_ring, FiniteRing, StructureTable, ValidationReport};
pub use verifier::{build_corpus, verify, verify_all, Status, TheoremCheck, TheoremId};

//! Centralizers, the center, and the family of distinct centralizers.

use std::collections::HashMap;
use std::fmt;

use crate::abelian::{GroupElement, Subgroup};
use crate::ring::FiniteRing;

pub use crate::abelian::Subgroup as CentralizerSet;

/// Above this order, family computations visit one representative per coset
/// of the center.
pub const COSET_SHORTCUT_MIN_ORDER: u64 = 512;

/// How to visit elements when computing all centralizers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Auto,
    PerElement,
    CosetRepresentatives,
}

impl Strategy {
    fn use_cosets(self, order: u64) -> bool {
        match self {
            Strategy::Auto => order > COSET_SHORTCUT_MIN_ORDER,
            Strategy::PerElement => false,
            Strategy::CosetRepresentatives => true,
        }
    }
}

/// `C_R(x)`, computed as the kernel of the additive map `s -> xs - sx`.
pub fn centralizer(r: &FiniteRing, x: &GroupElement) -> Subgroup {
    let g = r.group();
    let images = r.commutators_with_generators(&x.0);
    let k = g.rank();
    let n = r.order() as usize;
    let mut s = vec![0u64; k];
    let mut members = Vec::new();
    for idx in 0..n {
        g.decode_into(idx, &mut s);
        let in_kernel = (0..k).all(|c| {
            let d = g.factors()[c] as u128;
            let v: u128 = s
                .iter()
                .zip(&images)
                .map(|(&sj, w)| sj as u128 * w[c] as u128 % d)
                .sum();
            v.is_multiple_of(d)
        });
        if in_kernel {
            members.push(idx);
        }
    }
    Subgroup::from_sorted(members)
}

pub fn centralizer_idx(r: &FiniteRing, index: usize) -> Subgroup {
    centralizer(r, &r.group().element(index))
}

/// `Z(R)` as the intersection of the centralizers of the additive
/// generators, which suffices by bilinearity.
pub fn center(r: &FiniteRing) -> Subgroup {
    let g = r.group();
    (0..g.rank())
        .map(|i| centralizer(r, &g.generator(i)))
        .fold(Subgroup::whole(g), |acc, c| acc.intersection(&c))
}

/// The distinct centralizers `Cent(R) = {C_R(x) : x in R}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerFamily {
    /// Distinct centralizers ordered by their witness.
    pub distinct: Vec<Subgroup>,
    /// Least element index realizing each member of `distinct`.
    pub witnesses: Vec<usize>,
    pub center: Subgroup,
    /// `|R : Z(R)|`.
    pub index: u64,
}

impl CentralizerFamily {
    pub fn count(&self) -> usize {
        self.distinct.len()
    }

    pub fn witness_of(&self, s: &Subgroup) -> Option<usize> {
        self.distinct
            .iter()
            .position(|m| m == s)
            .map(|i| self.witnesses[i])
    }

    /// Members other than the whole ring.
    pub fn proper(&self) -> impl Iterator<Item = &Subgroup> {
        let whole = self.center.order() * self.index;
        self.distinct.iter().filter(move |s| s.order() != whole)
    }
}

pub fn centralizer_family(r: &FiniteRing) -> CentralizerFamily {
    centralizer_family_with(r, Strategy::Auto)
}

pub fn centralizer_family_with(r: &FiniteRing, strategy: Strategy) -> CentralizerFamily {
    let z = center(r);
    let n = r.order() as usize;
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut distinct = Vec::new();
    let mut witnesses = Vec::new();
    let mut record = |x: usize, c: Subgroup| {
        if !seen.contains_key(c.members()) {
            seen.insert(c.members().to_vec(), distinct.len());
            distinct.push(c);
            witnesses.push(x);
        }
    };
    if strategy.use_cosets(r.order()) {
        for x in coset_representatives(r, &z) {
            record(x, centralizer_idx(r, x));
        }
    } else {
        for x in 0..n {
            record(x, centralizer_idx(r, x));
        }
    }
    let index = r.order() / z.order();
    CentralizerFamily {
        distinct,
        witnesses,
        center: z,
        index,
    }
}

/// Least element of each coset of `z`, ascending.
pub(crate) fn coset_representatives(r: &FiniteRing, z: &Subgroup) -> Vec<usize> {
    let g = r.group();
    let n = r.order() as usize;
    let mut visited = vec![false; n];
    let mut reps = Vec::with_capacity(n / z.order() as usize);
    for x in 0..n {
        if visited[x] {
            continue;
        }
        reps.push(x);
        for &m in z.members() {
            visited[g.add_idx(x, m)] = true;
        }
    }
    reps
}

/// Sizes `|S| / |Z(R)|` of the proper centralizers, in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetProfile {
    pub center_order: u64,
    pub sizes: Vec<u64>,
}

/// A failure of the coset structure, with the offending element.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ProfileViolation {
    pub check: ViolatedCheck,
    pub witness: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolatedCheck {
    CenterNotContained,
    NotUnionOfCosets,
    NoncentralWithFullCentralizer,
    NotInOwnCentralizer,
    AmbiguousMember,
}

impl fmt::Display for ProfileViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at element {}", self.check, self.witness)
    }
}

/// Checks that every proper centralizer is a union of cosets of the center
/// and that each non-central element lies in exactly one recorded proper
/// centralizer equal to its own.
pub fn coset_profile(r: &FiniteRing) -> Result<CosetProfile, ProfileViolation> {
    let fam = centralizer_family(r);
    let g = r.group();
    let z = &fam.center;
    let fail = |check, witness| Err(ProfileViolation { check, witness });
    let mut sizes = Vec::new();
    for (s, &w) in fam.distinct.iter().zip(&fam.witnesses) {
        if !z.is_subset_of(s) {
            return fail(ViolatedCheck::CenterNotContained, w);
        }
        if s.order() == r.order() {
            continue;
        }
        for &m in s.members() {
            if z.members().iter().any(|&c| !s.contains(g.add_idx(m, c))) {
                return fail(ViolatedCheck::NotUnionOfCosets, m);
            }
        }
        sizes.push(s.order() / z.order());
    }
    for x in 0..r.order() as usize {
        if z.contains(x) {
            continue;
        }
        let c = centralizer_idx(r, x);
        if c.order() == r.order() {
            return fail(ViolatedCheck::NoncentralWithFullCentralizer, x);
        }
        if !c.contains(x) {
            return fail(ViolatedCheck::NotInOwnCentralizer, x);
        }
        if fam.proper().filter(|s| **s == c).count() != 1 {
            return fail(ViolatedCheck::AmbiguousMember, x);
        }
    }
    sizes.sort_unstable();
    Ok(CosetProfile {
        center_order: z.order(),
        sizes,
    })
}

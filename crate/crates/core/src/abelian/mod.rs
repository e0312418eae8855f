//! Finite abelian groups in mixed-radix coordinates.
//!
//! A group is presented by its invariant factors `d_1 | d_2 | ... | d_k`; an
//! element is a coordinate vector with `coords[i]` in `[0, d_i)`. Elements
//! are also addressed by a row-major index into `[0, |G|)` (last coordinate
//! varies fastest), and every set type stores sorted indices.

mod basis;
mod census;

pub use basis::Normalization;
pub use census::{identify_type, quotient_census, OrderCensus};

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::arith::divisors;
use crate::error::GroupError;

/// Default ceiling on group orders handled by the arithmetic layer.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

/// Canonical divisor chain describing a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct InvariantFactors(Vec<u64>);

/// A group element as a coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

/// Canonicalizes an arbitrary list of cyclic orders into invariant factors.
pub fn normalize_factors(raw: &[u64]) -> Result<InvariantFactors, GroupError> {
    Normalization::new(raw, DEFAULT_MAX_ORDER).map(|n| n.target().clone())
}

pub fn is_cyclic(t: &InvariantFactors) -> bool {
    t.0.len() <= 1
}

impl InvariantFactors {
    pub fn trivial() -> Self {
        InvariantFactors(Vec::new())
    }

    /// Accepts a factor list that is already a canonical divisor chain.
    pub fn from_canonical(factors: Vec<u64>) -> Result<Self, GroupError> {
        let ok = factors.iter().all(|&d| d >= 2) && factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !ok {
            return Err(GroupError::NotCanonical(factors));
        }
        let order: u128 = factors.iter().map(|&d| d as u128).product();
        if order > DEFAULT_MAX_ORDER as u128 {
            return Err(GroupError::OrderTooLarge(order, DEFAULT_MAX_ORDER));
        }
        Ok(InvariantFactors(factors))
    }

    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        self.0.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        GroupElement(c)
    }

    pub fn check(&self, x: &GroupElement) -> Result<(), GroupError> {
        if x.0.len() != self.rank() {
            return Err(GroupError::DimensionMismatch {
                expected: self.rank(),
                got: x.0.len(),
            });
        }
        for (index, (&value, &modulus)) in x.0.iter().zip(&self.0).enumerate() {
            if value >= modulus {
                return Err(GroupError::UnreducedCoordinate {
                    index,
                    value,
                    modulus,
                });
            }
        }
        Ok(())
    }

    fn conform(&self, x: &GroupElement) -> Result<(), GroupError> {
        if x.0.len() != self.rank() {
            Err(GroupError::DimensionMismatch {
                expected: self.rank(),
                got: x.0.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Reduces arbitrary integer coordinates modulo the factors.
    pub fn reduce(&self, coords: &[i128]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.rank() {
            return Err(GroupError::DimensionMismatch {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.0)
                .map(|(&c, &d)| c.rem_euclid(d as i128) as u64)
                .collect(),
        ))
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.conform(x)?;
        self.conform(y)?;
        Ok(GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.0)
                .map(|((&a, &b), &d)| (a % d + b % d) % d)
                .collect(),
        ))
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.conform(x)?;
        Ok(GroupElement(
            x.0.iter()
                .zip(&self.0)
                .map(|(&a, &d)| (d - a % d) % d)
                .collect(),
        ))
    }

    pub fn scalar_mul(&self, n: i64, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.conform(x)?;
        Ok(GroupElement(
            x.0.iter()
                .zip(&self.0)
                .map(|(&a, &d)| {
                    let n = (n as i128).rem_euclid(d as i128) as u128;
                    (n * (a % d) as u128 % d as u128) as u64
                })
                .collect(),
        ))
    }

    /// Row-major index of an element.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        self.index_of_coords(&x.0)
    }

    pub(crate) fn index_of_coords(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.0)
            .fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }

    pub fn element(&self, mut index: usize) -> GroupElement {
        let mut c = vec![0u64; self.rank()];
        for (slot, &d) in c.iter_mut().zip(&self.0).rev() {
            *slot = (index % d as usize) as u64;
            index /= d as usize;
        }
        GroupElement(c)
    }

    pub(crate) fn decode_into(&self, mut index: usize, out: &mut [u64]) {
        for (slot, &d) in out.iter_mut().zip(&self.0).rev() {
            *slot = (index % d as usize) as u64;
            index /= d as usize;
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element(i))
    }

    pub(crate) fn add_idx(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        let sum: Vec<u64> =
            x.0.iter()
                .zip(&y.0)
                .zip(&self.0)
                .map(|((&p, &q), &d)| (p + q) % d)
                .collect();
        self.index_of_coords(&sum)
    }

    pub(crate) fn scalar_idx(&self, n: u64, a: usize) -> usize {
        let x = self.element(a);
        let out: Vec<u64> =
            x.0.iter()
                .zip(&self.0)
                .map(|(&c, &d)| ((n % d) as u128 * c as u128 % d as u128) as u64)
                .collect();
        self.index_of_coords(&out)
    }

    /// Elements `e` with `n * e = 0`, as sorted indices.
    pub(crate) fn annihilated_by(&self, n: u64) -> Vec<usize> {
        (0..self.order() as usize)
            .filter(|&i| self.scalar_idx(n, i) == 0)
            .collect()
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

/// An addition-closed set of group elements, stored as sorted indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Wraps sorted member indices without checking closure.
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { members }
    }

    /// Builds a subgroup from arbitrary indices, checking that they form one.
    pub fn from_indices(g: &InvariantFactors, mut members: Vec<usize>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        let s = Subgroup { members };
        if !s.is_closed_in(g) {
            return Err(GroupError::NotClosed);
        }
        Ok(s)
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    pub fn whole(g: &InvariantFactors) -> Self {
        Subgroup {
            members: (0..g.order() as usize).collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&m| other.contains(m))
                .collect(),
        }
    }

    pub(crate) fn is_closed_in(&self, g: &InvariantFactors) -> bool {
        if self.members.first() != Some(&0) {
            return false;
        }
        let mut flags = vec![false; g.order() as usize];
        for &m in &self.members {
            if m >= flags.len() {
                return false;
            }
            flags[m] = true;
        }
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| flags[g.add_idx(a, b)]))
    }
}

/// Smallest addition-closed set containing `gens` and zero.
pub fn subgroup_generated(
    g: &InvariantFactors,
    gens: &[GroupElement],
) -> Result<Subgroup, GroupError> {
    for x in gens {
        g.check(x)?;
    }
    let gen_idx: Vec<usize> = gens.iter().map(|x| g.index_of(x)).collect();
    let mut seen = vec![false; g.order() as usize];
    seen[0] = true;
    let mut queue = vec![0usize];
    while let Some(m) = queue.pop() {
        for &s in &gen_idx {
            let n = g.add_idx(m, s);
            if !seen[n] {
                seen[n] = true;
                queue.push(n);
            }
        }
    }
    Ok(Subgroup::from_sorted(
        seen.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect(),
    ))
}

/// Every abelian group of order `n`, as canonical factor chains in
/// lexicographic order.
pub fn groups_of_order(n: u64) -> Vec<InvariantFactors> {
    fn chains(rem: u64, prev: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 1 {
            out.push(acc.clone());
            return;
        }
        for d in divisors(rem) {
            if d < 2 || d % prev != 0 {
                continue;
            }
            // every later factor is a multiple of d
            if (rem / d) != 1 && !(rem / d).is_multiple_of(d) {
                continue;
            }
            acc.push(d);
            chains(rem / d, d, acc, out);
            acc.pop();
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    chains(n, 1, &mut Vec::new(), &mut out);
    out.sort();
    out.into_iter().map(InvariantFactors).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(f: &[u64]) -> InvariantFactors {
        normalize_factors(f).unwrap()
    }

    fn e(c: &[u64]) -> GroupElement {
        GroupElement(c.to_vec())
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(g(&[2, 4]).factors(), &[2, 4]);
        assert_eq!(g(&[4, 2]).factors(), &[2, 4]);
        assert_eq!(g(&[2, 6, 3]).factors(), &[6, 6]);
        assert_eq!(g(&[1, 1]).factors(), &[] as &[u64]);
        assert_eq!(g(&[2, 3]).factors(), &[6]);
    }

    #[test]
    fn normalize_rejects_zero_and_overflow() {
        assert_eq!(normalize_factors(&[0]), Err(GroupError::ZeroFactor));
        assert!(matches!(
            normalize_factors(&[1 << 11, 1 << 11]),
            Err(GroupError::OrderTooLarge(..))
        ));
    }

    #[test]
    fn elementwise_arithmetic() {
        let z24 = g(&[2, 4]);
        assert_eq!(z24.add(&e(&[1, 3]), &e(&[1, 2])).unwrap(), e(&[0, 1]));
        assert_eq!(z24.neg(&e(&[1, 3])).unwrap(), e(&[1, 1]));
        let z5 = g(&[5]);
        assert_eq!(z5.scalar_mul(5, &e(&[3])).unwrap(), e(&[0]));
        assert_eq!(z5.scalar_mul(-1, &e(&[3])).unwrap(), e(&[2]));
        assert_eq!(
            z24.add(&e(&[1]), &e(&[1, 2])),
            Err(GroupError::DimensionMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn index_is_row_major() {
        let z24 = g(&[2, 4]);
        assert_eq!(z24.index_of(&e(&[1, 2])), 6);
        assert_eq!(z24.element(6), e(&[1, 2]));
        for i in 0..8 {
            assert_eq!(z24.index_of(&z24.element(i)), i);
        }
    }

    #[test]
    fn generated_subgroups() {
        let k4 = g(&[2, 2]);
        let s = subgroup_generated(&k4, &[e(&[1, 0])]).unwrap();
        assert_eq!(
            s.members(),
            &[k4.index_of(&e(&[0, 0])), k4.index_of(&e(&[1, 0]))]
        );

        let z4 = g(&[4]);
        assert_eq!(
            subgroup_generated(&z4, &[e(&[2])]).unwrap().members(),
            &[0, 2]
        );

        // closure by repeated addition, computed by hand
        let z24 = g(&[2, 4]);
        let s = subgroup_generated(&z24, &[e(&[1, 1])]).unwrap();
        let mut want: Vec<usize> = [[0, 0], [1, 1], [0, 2], [1, 3]]
            .iter()
            .map(|c| z24.index_of(&e(c)))
            .collect();
        want.sort();
        assert_eq!(s.members(), want.as_slice());
        assert_eq!(subgroup_generated(&z24, &[]).unwrap(), Subgroup::trivial());
    }

    #[test]
    fn not_closed_rejected() {
        let z4 = g(&[4]);
        assert_eq!(
            Subgroup::from_indices(&z4, vec![0, 1]),
            Err(GroupError::NotClosed)
        );
        assert!(Subgroup::from_indices(&z4, vec![2, 0]).is_ok());
    }

    #[test]
    fn cyclicity() {
        assert!(is_cyclic(&InvariantFactors::trivial()));
        assert!(is_cyclic(&g(&[6])));
        assert!(!is_cyclic(&g(&[2, 2])));
    }

    #[test]
    fn groups_of_small_orders() {
        let show = |n| {
            groups_of_order(n)
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(show(1), vec!["[]"]);
        assert_eq!(show(8), vec!["[2,2,2]", "[2,4]", "[8]"]);
        assert_eq!(show(12), vec!["[2,6]", "[12]"]);
        assert_eq!(groups_of_order(16).len(), 5);
        assert_eq!(groups_of_order(64).len(), 11);
    }

    proptest! {
        #[test]
        fn normalize_idempotent_and_order_insensitive(raw in prop::collection::vec(1u64..13, 0..5), seed in any::<u64>()) {
            let t = normalize_factors(&raw).unwrap();
            prop_assert_eq!(normalize_factors(t.factors()).unwrap(), t.clone());
            let mut shuffled = raw.clone();
            let n = shuffled.len();
            if n > 1 {
                shuffled.rotate_left((seed as usize) % n);
                shuffled.swap(0, (seed as usize / 7) % n);
            }
            prop_assert_eq!(normalize_factors(&shuffled).unwrap(), t.clone());
            prop_assert_eq!(t.order(), raw.iter().product::<u64>());
        }

        #[test]
        fn lagrange(raw in prop::collection::vec(1u64..7, 1..4), picks in prop::collection::vec(any::<u32>(), 0..3)) {
            let t = normalize_factors(&raw).unwrap();
            let gens: Vec<GroupElement> = picks.iter().map(|&p| t.element(p as usize % t.order() as usize)).collect();
            let s = subgroup_generated(&t, &gens).unwrap();
            prop_assert_eq!(t.order() % s.order(), 0);
            prop_assert!(s.is_closed_in(&t));
        }
    }
}

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::arith::{divisors, factorize, gcd};
use crate::error::GroupError;

use super::{InvariantFactors, Subgroup};

/// Number of elements of each order.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OrderCensus(BTreeMap<u64, u64>);

impl OrderCensus {
    pub fn from_counts(counts: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (order, count) in counts {
            if count > 0 {
                *map.entry(order).or_insert(0) += count;
            }
        }
        OrderCensus(map)
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn get(&self, order: u64) -> u64 {
        self.0.get(&order).copied().unwrap_or(0)
    }

    /// Census of the group with the given type via `#{x : m x = 0} = prod gcd(m, d_i)`.
    pub fn of_type(t: &InvariantFactors) -> Self {
        let mut exact: BTreeMap<u64, u64> = BTreeMap::new();
        for m in divisors(t.exponent()) {
            let killed: u64 = t.factors().iter().map(|&d| gcd(m, d)).product();
            let below: u64 = exact
                .iter()
                .filter(|(&e, _)| m % e == 0)
                .map(|(_, &c)| c)
                .sum();
            exact.insert(m, killed - below);
        }
        OrderCensus::from_counts(exact)
    }
}

/// Orders of cosets in `g / s`: the order of `x + s` is the least `n >= 1`
/// with `n x` in `s`. Counts are per coset, so they sum to `|g| / |s|`.
pub fn quotient_census(g: &InvariantFactors, s: &Subgroup) -> Result<OrderCensus, GroupError> {
    if !s.is_closed_in(g) {
        return Err(GroupError::NotClosed);
    }
    let n = g.order() as usize;
    let mut in_s = vec![false; n];
    for &m in s.members() {
        in_s[m] = true;
    }
    let mut visited = vec![false; n];
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for x in 0..n {
        if visited[x] {
            continue;
        }
        for &m in s.members() {
            visited[g.add_idx(x, m)] = true;
        }
        let mut order = 1u64;
        let mut y = x;
        while !in_s[y] {
            y = g.add_idx(y, x);
            order += 1;
        }
        *counts.entry(order).or_insert(0) += 1;
    }
    Ok(OrderCensus(counts))
}

/// Recovers the isomorphism type from an order census.
///
/// For each prime `p`, the number of elements whose order divides `p^j`
/// is `p^(sum_i min(lambda_i, j))`, so successive logarithms give the
/// conjugate of the partition `lambda` of the `p`-primary part.
pub fn identify_type(c: &OrderCensus) -> Result<InvariantFactors, GroupError> {
    let total = c.total();
    if total == 0 || c.get(1) != 1 {
        return Err(GroupError::InvalidCensus);
    }
    let mut prime_powers = Vec::new();
    for (p, e) in factorize(total) {
        let mut logs = vec![0u32];
        let mut j = 1u32;
        while *logs.last().unwrap() < e {
            let pj = p.checked_pow(j).ok_or(GroupError::InvalidCensus)?;
            let count: u64 = c
                .counts()
                .iter()
                .filter(|(&ord, _)| pj % ord == 0)
                .map(|(_, &n)| n)
                .sum();
            let log = exact_log(count, p).ok_or(GroupError::InvalidCensus)?;
            if log <= *logs.last().unwrap() || log > e {
                return Err(GroupError::InvalidCensus);
            }
            logs.push(log);
            j += 1;
        }
        // conjugate[j-1] = #{i : lambda_i >= j}
        let conjugate: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        if conjugate.windows(2).any(|w| w[1] > w[0]) {
            return Err(GroupError::InvalidCensus);
        }
        for i in 1..=conjugate[0] {
            let lambda = conjugate.iter().filter(|&&c| c >= i).count() as u32;
            prime_powers.push(p.pow(lambda));
        }
    }
    let t = super::normalize_factors(&prime_powers)?;
    if &OrderCensus::of_type(&t) != c {
        return Err(GroupError::InvalidCensus);
    }
    Ok(t)
}

fn exact_log(mut n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::super::{groups_of_order, normalize_factors, subgroup_generated, GroupElement};
    use super::*;

    fn census(pairs: &[(u64, u64)]) -> OrderCensus {
        OrderCensus::from_counts(pairs.iter().copied())
    }

    #[test]
    fn whole_and_trivial_quotients() {
        let g = normalize_factors(&[2, 4]).unwrap();
        assert_eq!(
            quotient_census(&g, &Subgroup::whole(&g)).unwrap(),
            census(&[(1, 1)])
        );
        assert_eq!(
            quotient_census(&g, &Subgroup::trivial()).unwrap(),
            census(&[(1, 1), (2, 3), (4, 4)])
        );
    }

    #[test]
    fn z4xz4_mod_diagonal_two() {
        let g = normalize_factors(&[4, 4]).unwrap();
        let s = subgroup_generated(&g, &[GroupElement(vec![2, 2])]).unwrap();
        assert_eq!(s.order(), 2);
        // oracle: explicit coset table, order of each coset by repeated addition
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for x in 0..16usize {
            let c: Vec<usize> = {
                let mut v: Vec<usize> = s.members().iter().map(|&m| g.add_idx(x, m)).collect();
                v.sort();
                v
            };
            if !cosets.contains(&c) {
                cosets.push(c);
            }
        }
        assert_eq!(cosets.len(), 8);
        let mut counts = BTreeMap::new();
        for c in &cosets {
            let x = c[0];
            let ord = (1..=8u64)
                .find(|&n| s.contains(g.scalar_idx(n, x)))
                .unwrap();
            *counts.entry(ord).or_insert(0u64) += 1;
        }
        let got = quotient_census(&g, &s).unwrap();
        assert_eq!(got.counts(), &counts);
        assert_eq!(identify_type(&got).unwrap().factors(), &[2, 4]);
    }

    #[test]
    fn identify_examples() {
        assert_eq!(
            identify_type(&census(&[(1, 1), (2, 3)])).unwrap().factors(),
            &[2, 2]
        );
        assert_eq!(
            identify_type(&census(&[(1, 1), (2, 3), (4, 4)]))
                .unwrap()
                .factors(),
            &[2, 4]
        );
        assert_eq!(
            identify_type(&census(&[(1, 1), (5, 24)]))
                .unwrap()
                .factors(),
            &[5, 5]
        );
        assert_eq!(
            identify_type(&census(&[(1, 1)])).unwrap(),
            InvariantFactors::trivial()
        );
    }

    #[test]
    fn rank_two_versus_cyclic_oracle() {
        let brute = |f: &[u64]| {
            let g = normalize_factors(f).unwrap();
            quotient_census(&g, &Subgroup::trivial()).unwrap()
        };
        assert_eq!(brute(&[5, 5]), census(&[(1, 1), (5, 24)]));
        assert_eq!(brute(&[25]), census(&[(1, 1), (5, 4), (25, 20)]));
    }

    #[test]
    fn corrupted_censuses_rejected() {
        assert_eq!(
            identify_type(&census(&[(1, 1), (2, 2)])),
            Err(GroupError::InvalidCensus)
        );
        assert_eq!(
            identify_type(&census(&[(2, 3)])),
            Err(GroupError::InvalidCensus)
        );
        assert_eq!(
            identify_type(&census(&[(1, 1), (4, 3)])),
            Err(GroupError::InvalidCensus)
        );
        assert_eq!(
            identify_type(&census(&[(1, 2), (2, 2)])),
            Err(GroupError::InvalidCensus)
        );
        assert_eq!(
            identify_type(&census(&[(1, 1), (3, 2), (2, 1)])),
            Err(GroupError::InvalidCensus)
        );
    }

    #[test]
    fn identify_inverts_census_for_every_group_up_to_64() {
        for n in 1..=64 {
            for t in groups_of_order(n) {
                let brute = quotient_census(&t, &Subgroup::trivial()).unwrap();
                assert_eq!(brute, OrderCensus::of_type(&t), "{t}");
                assert_eq!(identify_type(&brute).unwrap(), t);
            }
        }
    }
}

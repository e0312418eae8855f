use crate::arith::{crt, factorize};
use crate::error::GroupError;

use super::{GroupElement, InvariantFactors};

/// An explicit isomorphism from `Z_{a_1} x ... x Z_{a_m}` (arbitrary orders)
/// onto its canonical invariant-factor presentation.
///
/// Each raw cyclic factor is split into prime-power parts by CRT; parts of
/// each prime are sorted by size and merged largest-to-largest into the
/// canonical factors.
#[derive(Clone, Debug)]
pub struct Normalization {
    source: Vec<u64>,
    target: InvariantFactors,
    parts: Vec<Part>,
}

#[derive(Clone, Debug)]
struct Part {
    prime_power: u64,
    source: usize,
    slot: usize,
}

impl Normalization {
    pub fn new(raw: &[u64], max_order: u64) -> Result<Self, GroupError> {
        if raw.contains(&0) {
            return Err(GroupError::ZeroFactor);
        }
        let order: u128 = raw.iter().try_fold(1u128, |acc, &d| {
            let next = acc.saturating_mul(d as u128);
            (next <= max_order as u128)
                .then_some(next)
                .ok_or(GroupError::OrderTooLarge(next, max_order))
        })?;
        debug_assert!(order <= max_order as u128);

        // (prime, prime power, source factor)
        let mut by_prime: Vec<(u64, Vec<(u64, usize)>)> = Vec::new();
        for (t, &a) in raw.iter().enumerate() {
            for (p, e) in factorize(a) {
                let pe = p.pow(e);
                match by_prime.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push((pe, t)),
                    None => by_prime.push((p, vec![(pe, t)])),
                }
            }
        }
        let rank = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; rank];
        let mut parts = Vec::new();
        for (_, v) in &mut by_prime {
            v.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
            for (j, &(pe, t)) in v.iter().enumerate() {
                let slot = rank - 1 - j;
                factors[slot] *= pe;
                parts.push(Part {
                    prime_power: pe,
                    source: t,
                    slot,
                });
            }
        }
        Ok(Normalization {
            source: raw.to_vec(),
            target: InvariantFactors(factors),
            parts,
        })
    }

    pub fn source(&self) -> &[u64] {
        &self.source
    }

    pub fn target(&self) -> &InvariantFactors {
        &self.target
    }

    /// Whether the raw presentation is already canonical and the map is the
    /// identity on coordinates.
    pub fn is_identity(&self) -> bool {
        self.source == self.target.0
    }

    /// Maps raw coordinates to canonical coordinates.
    pub fn forward(&self, raw: &[u64]) -> GroupElement {
        let mut residues: Vec<Vec<(u64, u64)>> = vec![Vec::new(); self.target.rank()];
        for p in &self.parts {
            residues[p.slot].push((raw[p.source] % p.prime_power, p.prime_power));
        }
        GroupElement(residues.iter().map(|r| crt(r)).collect())
    }

    /// Maps canonical coordinates back to raw coordinates.
    pub fn backward(&self, canon: &GroupElement) -> Vec<u64> {
        let mut residues: Vec<Vec<(u64, u64)>> = vec![Vec::new(); self.source.len()];
        for p in &self.parts {
            residues[p.source].push((canon.0[p.slot] % p.prime_power, p.prime_power));
        }
        residues.iter().map(|r| crt(r)).collect()
    }
}

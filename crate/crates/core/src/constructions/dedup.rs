use std::collections::HashSet;

use crate::abelian::{GroupElement, InvariantFactors};
use crate::error::EnumerationError;
use crate::ring::{make_ring, FiniteRing, StructureTable};

/// Maximum number of candidate generator images tried when listing
/// automorphisms.
pub const DEFAULT_AUTOMORPHISM_BUDGET: u128 = 1 << 20;

/// Computes orbit representatives of structure tables under the additive
/// automorphisms of a fixed group.
///
/// An automorphism `phi` sends the ring with table `T` to the ring with table
/// `T'[i][j] = phi(phi^-1(g_i) * phi^-1(g_j))`; the representative of an
/// orbit is the table whose row-major sequence of entry indices is least.
#[derive(Clone, Debug)]
pub struct Canonicalizer {
    g: InvariantFactors,
    /// Each automorphism as `(phi, phi^-1)` permutations of element indices.
    automorphisms: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Canonicalizer {
    pub fn new(g: &InvariantFactors, budget: u128) -> Result<Self, EnumerationError> {
        let k = g.rank();
        let n = g.order() as usize;
        let candidates: Vec<Vec<usize>> =
            g.factors().iter().map(|&d| g.annihilated_by(d)).collect();
        let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
        if total > budget {
            return Err(EnumerationError::AutomorphismBudget {
                candidates: total,
                budget,
            });
        }
        let mut automorphisms = Vec::new();
        let mut pick = vec![0usize; k];
        loop {
            let images: Vec<usize> = (0..k).map(|i| candidates[i][pick[i]]).collect();
            if let Some(phi) = extend_homomorphism(g, &images) {
                let mut inv = vec![usize::MAX; n];
                let mut bijective = true;
                for (x, &y) in phi.iter().enumerate() {
                    if inv[y] != usize::MAX {
                        bijective = false;
                        break;
                    }
                    inv[y] = x;
                }
                if bijective {
                    automorphisms.push((phi, inv));
                }
            }
            // odometer over generator images
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(Canonicalizer {
                        g: g.clone(),
                        automorphisms,
                    });
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < candidates[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    pub fn group(&self) -> &InvariantFactors {
        &self.g
    }

    pub fn automorphism_count(&self) -> usize {
        self.automorphisms.len()
    }

    fn image_key(&self, r: &FiniteRing, phi: &[usize], inv: &[usize]) -> Vec<usize> {
        let k = self.g.rank();
        let pre: Vec<usize> = (0..k)
            .map(|i| inv[self.g.index_of(&self.g.generator(i))])
            .collect();
        let mut key = Vec::with_capacity(k * k);
        for &a in &pre {
            for &b in &pre {
                key.push(phi[r.mul_idx(a, b)]);
            }
        }
        key
    }

    /// Least table in the orbit of `r`, as entry indices in row-major order.
    pub fn canonical_key(&self, r: &FiniteRing) -> Vec<usize> {
        self.automorphisms
            .iter()
            .map(|(phi, inv)| self.image_key(r, phi, inv))
            .min()
            .unwrap_or_default()
    }

    /// The orbit representative of `r` as a ring.
    pub fn canonical_ring(&self, r: &FiniteRing) -> FiniteRing {
        let key = self.canonical_key(r);
        let k = self.g.rank();
        let rows = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| self.g.element(key[i * k + j]))
                    .collect::<Vec<GroupElement>>()
            })
            .collect();
        make_ring(self.g.clone(), StructureTable::new(rows))
            .expect("automorphic image of a ring is a ring")
    }
}

/// `phi(x) = sum_i x_i * images[i]`, or `None` if the images do not respect
/// the generator orders.
fn extend_homomorphism(g: &InvariantFactors, images: &[usize]) -> Option<Vec<usize>> {
    for (i, &d) in g.factors().iter().enumerate() {
        if g.scalar_idx(d, images[i]) != 0 {
            return None;
        }
    }
    let n = g.order() as usize;
    let mut phi = vec![0usize; n];
    for (x, slot) in phi.iter_mut().enumerate() {
        let c = g.element(x);
        *slot =
            c.0.iter()
                .zip(images)
                .fold(0, |acc, (&ci, &im)| g.add_idx(acc, g.scalar_idx(ci, im)));
    }
    Some(phi)
}

/// One representative per isomorphism class, in order of first occurrence.
pub fn dedup_isomorphic(rings: &[FiniteRing]) -> Result<Vec<FiniteRing>, EnumerationError> {
    let Some(first) = rings.first() else {
        return Ok(Vec::new());
    };
    if rings.iter().any(|r| r.group() != first.group()) {
        return Err(EnumerationError::MixedGroups);
    }
    let canon = Canonicalizer::new(first.group(), DEFAULT_AUTOMORPHISM_BUDGET)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in rings {
        let rep = canon.canonical_ring(r);
        if seen.insert(rep.table().clone()) {
            out.push(rep);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::normalize_factors;
    use crate::constructions::{enumerate_tables, EnumerationOptions};

    fn g(f: &[u64]) -> InvariantFactors {
        normalize_factors(f).unwrap()
    }

    #[test]
    fn automorphism_group_orders() {
        let count = |f: &[u64]| {
            Canonicalizer::new(&g(f), DEFAULT_AUTOMORPHISM_BUDGET)
                .unwrap()
                .automorphism_count()
        };
        assert_eq!(count(&[2]), 1);
        assert_eq!(count(&[3]), 2);
        assert_eq!(count(&[4]), 2);
        assert_eq!(count(&[2, 2]), 6);
        assert_eq!(count(&[2, 4]), 8);
        assert_eq!(count(&[2, 2, 2]), 168);
        assert_eq!(count(&[]), 1);
    }

    #[test]
    fn budget_refuses_large_groups() {
        assert!(matches!(
            Canonicalizer::new(&g(&[2, 2, 2, 2]), 1000),
            Err(EnumerationError::AutomorphismBudget { .. })
        ));
    }

    #[test]
    fn z3_units_are_one_class() {
        let z3 = g(&[3]);
        let rings: Vec<FiniteRing> = enumerate_tables(&z3, &EnumerationOptions::default())
            .unwrap()
            .map(|e| e.ring)
            .collect();
        assert_eq!(rings.len(), 3);
        // g*g = g and g*g = 2g are swapped by g -> 2g
        let reps = dedup_isomorphic(&rings[1..]).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(dedup_isomorphic(&rings).unwrap().len(), 2);
    }

    #[test]
    fn z2_rings_are_distinct() {
        let rings: Vec<FiniteRing> = enumerate_tables(&g(&[2]), &EnumerationOptions::default())
            .unwrap()
            .map(|e| e.ring)
            .collect();
        assert_eq!(dedup_isomorphic(&rings).unwrap().len(), 2);
    }

    #[test]
    fn mixed_groups_rejected() {
        let a = crate::constructions::zero_ring(g(&[2]));
        let b = crate::constructions::zero_ring(g(&[3]));
        assert_eq!(
            dedup_isomorphic(&[a, b]),
            Err(EnumerationError::MixedGroups)
        );
    }
}

//! Finite rings given by structure constants on an additive generating set.
//!
//! Rings need not have an identity. Multiplication is the bilinear extension
//! of a generator table, so distributivity holds by construction and
//! associativity only has to be checked on generator triples.

use std::fmt;

use crate::abelian::{GroupElement, InvariantFactors, Normalization, DEFAULT_MAX_ORDER};
use crate::arith::gcd;
use crate::error::RingError;

/// Rings up to this order keep a full multiplication table.
pub const MUL_CACHE_MAX_ORDER: u64 = 256;

/// A `k x k` table of generator products.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructureTable {
    rows: Vec<Vec<GroupElement>>,
}

impl StructureTable {
    pub fn new(rows: Vec<Vec<GroupElement>>) -> Self {
        StructureTable { rows }
    }

    pub fn zero(g: &InvariantFactors) -> Self {
        let k = g.rank();
        StructureTable {
            rows: vec![vec![g.zero(); k]; k],
        }
    }

    pub fn from_coords(rows: Vec<Vec<Vec<u64>>>) -> Self {
        StructureTable {
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(GroupElement).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupElement {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: GroupElement) {
        self.rows[i][j] = value;
    }

    pub fn rows(&self) -> &[Vec<GroupElement>] {
        &self.rows
    }

    pub fn to_coords(&self) -> Vec<Vec<Vec<u64>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| e.0.clone()).collect())
            .collect()
    }

    fn check_shape(&self, moduli: &[u64]) -> Result<(), RingError> {
        let k = moduli.len();
        for row in &self.rows {
            if row.len() != k {
                return Err(RingError::TableShape {
                    rows: self.rows.len(),
                    cols: row.len(),
                    expected: k,
                });
            }
            for e in row {
                if e.0.len() != k {
                    return Err(crate::error::GroupError::DimensionMismatch {
                        expected: k,
                        got: e.0.len(),
                    }
                    .into());
                }
            }
        }
        if self.rows.len() != k {
            return Err(RingError::TableShape {
                rows: self.rows.len(),
                cols: k,
                expected: k,
            });
        }
        Ok(())
    }
}

/// Result of checking a table against the ring axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub well_defined: bool,
    pub associative: bool,
    pub first_ill_defined: Option<(usize, usize)>,
    pub first_failing_triple: Option<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.well_defined && self.associative
    }

    fn into_result(self) -> Result<(), RingError> {
        if let Some((i, j)) = self.first_ill_defined {
            return Err(RingError::NotWellDefined(i, j));
        }
        if let Some((i, j, k)) = self.first_failing_triple {
            return Err(RingError::NotAssociative(i, j, k));
        }
        Ok(())
    }
}

/// Bilinear product on `Z_{m_1} x ... x Z_{m_k}` from a generator table with
/// coordinates reduced modulo `m`.
#[derive(Clone, Debug)]
pub(crate) struct Bilinear {
    moduli: Vec<u64>,
    products: Vec<Vec<u64>>,
}

impl Bilinear {
    pub(crate) fn new(moduli: &[u64], table: &StructureTable) -> Self {
        let products = table
            .rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|e| e.0.iter().zip(moduli).map(|(&c, &d)| c % d).collect())
            .collect();
        Bilinear {
            moduli: moduli.to_vec(),
            products,
        }
    }

    fn k(&self) -> usize {
        self.moduli.len()
    }

    pub(crate) fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let k = self.k();
        let mut acc = vec![0u128; k];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let coef = xi as u128 * yj as u128;
                for ((a, &p), &d) in acc
                    .iter_mut()
                    .zip(&self.products[i * k + j])
                    .zip(&self.moduli)
                {
                    *a = (*a + coef % d as u128 * p as u128) % d as u128;
                }
            }
        }
        acc.into_iter().map(|a| a as u64).collect()
    }

    fn generator(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.k()];
        v[i] = 1 % self.moduli[i];
        v
    }

    fn well_defined(&self) -> Option<(usize, usize)> {
        let k = self.k();
        for i in 0..k {
            for j in 0..k {
                let n = gcd(self.moduli[i], self.moduli[j]) as u128;
                let bad = self.products[i * k + j]
                    .iter()
                    .zip(&self.moduli)
                    .any(|(&c, &d)| !(n * c as u128).is_multiple_of(d as u128));
                if bad {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn first_nonassociative_generator_triple(&self) -> Option<(usize, usize, usize)> {
        let k = self.k();
        let gens: Vec<Vec<u64>> = (0..k).map(|i| self.generator(i)).collect();
        for i in 0..k {
            for j in 0..k {
                let ij = &self.products[i * k + j];
                for l in 0..k {
                    let left = self.mul(ij, &gens[l]);
                    let right = self.mul(&gens[i], &self.products[j * k + l]);
                    if left != right {
                        return Some((i, j, l));
                    }
                }
            }
        }
        None
    }

    fn report(&self) -> ValidationReport {
        let ill = self.well_defined();
        let triple = if ill.is_none() {
            self.first_nonassociative_generator_triple()
        } else {
            None
        };
        ValidationReport {
            well_defined: ill.is_none(),
            associative: ill.is_none() && triple.is_none(),
            first_ill_defined: ill,
            first_failing_triple: triple,
        }
    }
}

/// Checks well-definedness and generator-triple associativity.
pub fn validate_table(
    g: &InvariantFactors,
    t: &StructureTable,
) -> Result<ValidationReport, RingError> {
    t.check_shape(g.factors())?;
    Ok(Bilinear::new(g.factors(), t).report())
}

/// Checks associativity on every element triple. Slow; intended as an
/// independent audit of [`validate_table`] on small groups.
pub fn audit_table_exhaustive(
    g: &InvariantFactors,
    t: &StructureTable,
) -> Result<ValidationReport, RingError> {
    t.check_shape(g.factors())?;
    let b = Bilinear::new(g.factors(), t);
    let ill = b.well_defined();
    let mut associative = ill.is_none();
    if associative {
        let elems: Vec<GroupElement> = g.elements().collect();
        'outer: for x in &elems {
            for y in &elems {
                let xy = b.mul(&x.0, &y.0);
                for z in &elems {
                    if b.mul(&xy, &z.0) != b.mul(&x.0, &b.mul(&y.0, &z.0)) {
                        associative = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(ValidationReport {
        well_defined: ill.is_none(),
        associative,
        first_ill_defined: ill,
        first_failing_triple: None,
    })
}

/// A validated finite ring.
#[derive(Clone)]
pub struct FiniteRing {
    group: InvariantFactors,
    table: StructureTable,
    bilinear: Bilinear,
    commutative: bool,
    order: u64,
    cache: Option<Vec<u32>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("group", &self.group)
            .field("table", &self.table.to_coords())
            .finish()
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.table == other.table
    }
}

impl Eq for FiniteRing {}

/// Validates a structure table on a canonical group and builds the ring.
pub fn make_ring(g: InvariantFactors, t: StructureTable) -> Result<FiniteRing, RingError> {
    t.check_shape(g.factors())?;
    for row in t.rows() {
        for e in row {
            g.check(e)?;
        }
    }
    let bilinear = Bilinear::new(g.factors(), &t);
    bilinear.report().into_result()?;
    Ok(FiniteRing::assemble(g, t, bilinear))
}

impl FiniteRing {
    fn assemble(group: InvariantFactors, table: StructureTable, bilinear: Bilinear) -> Self {
        let k = group.rank();
        let commutative = (0..k).all(|i| (0..k).all(|j| table.get(i, j) == table.get(j, i)));
        let order = group.order();
        let mut ring = FiniteRing {
            group,
            table,
            bilinear,
            commutative,
            order,
            cache: None,
        };
        if order <= MUL_CACHE_MAX_ORDER {
            let n = order as usize;
            let mut cache = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    cache[a * n + b] = ring.mul_uncached(a, b) as u32;
                }
            }
            ring.cache = Some(cache);
        }
        ring
    }

    /// Builds a ring from a table over an arbitrary (possibly non-canonical)
    /// list of cyclic orders, transporting it to the canonical presentation.
    pub fn from_presentation(factors: &[u64], table: &StructureTable) -> Result<Self, RingError> {
        let norm = Normalization::new(factors, DEFAULT_MAX_ORDER)?;
        table.check_shape(factors)?;
        let raw = Bilinear::new(factors, table);
        if let Some((i, j)) = raw.well_defined() {
            return Err(RingError::NotWellDefined(i, j));
        }
        if norm.is_identity() {
            return make_ring(norm.target().clone(), reduce_table(factors, table));
        }
        let g = norm.target().clone();
        let k = g.rank();
        let pre: Vec<Vec<u64>> = (0..k).map(|i| norm.backward(&g.generator(i))).collect();
        let mut out = StructureTable::zero(&g);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, norm.forward(&raw.mul(&pre[i], &pre[j])));
            }
        }
        make_ring(g, out)
    }

    pub fn group(&self) -> &InvariantFactors {
        &self.group
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(self.bilinear.mul(&x.0, &y.0))
    }

    /// Product of two elements addressed by index.
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        match &self.cache {
            Some(c) => c[a * self.order as usize + b] as usize,
            None => self.mul_uncached(a, b),
        }
    }

    fn mul_uncached(&self, a: usize, b: usize) -> usize {
        let k = self.group.rank();
        let mut x = vec![0u64; k];
        let mut y = vec![0u64; k];
        self.group.decode_into(a, &mut x);
        self.group.decode_into(b, &mut y);
        self.group.index_of_coords(&self.bilinear.mul(&x, &y))
    }

    /// Images `x g_j - g_j x` of the generators under commutation with `x`.
    pub(crate) fn commutators_with_generators(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let g = &self.group;
        (0..g.rank())
            .map(|j| {
                let gj = g.generator(j);
                let a = self.bilinear.mul(x, &gj.0);
                let b = self.bilinear.mul(&gj.0, x);
                a.iter()
                    .zip(&b)
                    .zip(g.factors())
                    .map(|((&p, &q), &d)| (p + d - q) % d)
                    .collect()
            })
            .collect()
    }

    /// Brute-force check of associativity and both distributive laws on all
    /// element triples.
    pub fn audit_full(&self) -> bool {
        let n = self.order as usize;
        let g = &self.group;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul_idx(x, y);
                for z in 0..n {
                    if self.mul_idx(xy, z) != self.mul_idx(x, self.mul_idx(y, z)) {
                        return false;
                    }
                    let yz = g.add_idx(y, z);
                    if self.mul_idx(x, yz) != g.add_idx(xy, self.mul_idx(x, z)) {
                        return false;
                    }
                    if self.mul_idx(yz, x) != g.add_idx(self.mul_idx(y, x), self.mul_idx(z, x)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn reduce_table(moduli: &[u64], t: &StructureTable) -> StructureTable {
    StructureTable::new(
        t.rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| GroupElement(e.0.iter().zip(moduli).map(|(&c, &d)| c % d).collect()))
                    .collect()
            })
            .collect(),
    )
}

pub fn is_commutative(r: &FiniteRing) -> bool {
    r.is_commutative()
}

pub fn mul(r: &FiniteRing, x: &GroupElement, y: &GroupElement) -> GroupElement {
    r.mul(x, y)
}

/// Componentwise ring on the product of the additive groups.
pub fn direct_sum(r1: &FiniteRing, r2: &FiniteRing) -> Result<FiniteRing, RingError> {
    let (k1, k2) = (r1.group.rank(), r2.group.rank());
    let mut factors = r1.group.factors().to_vec();
    factors.extend_from_slice(r2.group.factors());
    let k = k1 + k2;
    let mut rows = vec![vec![GroupElement(vec![0; k]); k]; k];
    for (i, row) in rows.iter_mut().take(k1).enumerate() {
        for (j, cell) in row.iter_mut().take(k1).enumerate() {
            cell.0[..k1].copy_from_slice(&r1.table.get(i, j).0);
        }
    }
    for i in 0..k2 {
        for j in 0..k2 {
            rows[k1 + i][k1 + j].0[k1..].copy_from_slice(&r2.table.get(i, j).0);
        }
    }
    FiniteRing::from_presentation(&factors, &StructureTable::new(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::normalize_factors;

    fn e(c: &[u64]) -> GroupElement {
        GroupElement(c.to_vec())
    }

    /// Upper-triangular 2x2 matrices over Z_p on generators e11, e12, e22.
    fn triangular_table(p: u64) -> (InvariantFactors, StructureTable) {
        let g = normalize_factors(&[p, p, p]).unwrap();
        let mut t = StructureTable::zero(&g);
        t.set(0, 0, e(&[1, 0, 0]));
        t.set(0, 1, e(&[0, 1, 0]));
        t.set(1, 2, e(&[0, 1, 0]));
        t.set(2, 2, e(&[0, 0, 1]));
        (g, t)
    }

    fn matmul(p: u64, x: &[u64], y: &[u64]) -> Vec<u64> {
        // [[a, b], [0, c]] stored as (a, b, c)
        let (a, b, c) = (x[0], x[1], x[2]);
        let (d, f, h) = (y[0], y[1], y[2]);
        vec![a * d % p, (a * f + b * h) % p, c * h % p]
    }

    #[test]
    fn zero_and_boolean_rings() {
        let g = normalize_factors(&[2]).unwrap();
        let zero = make_ring(g.clone(), StructureTable::new(vec![vec![e(&[0])]])).unwrap();
        assert!(zero.is_commutative());
        assert_eq!(zero.order(), 2);
        let f2 = make_ring(g, StructureTable::new(vec![vec![e(&[1])]])).unwrap();
        assert_eq!(f2.mul(&e(&[1]), &e(&[1])), e(&[1]));
    }

    #[test]
    fn triangular_matches_matrix_arithmetic() {
        for p in [2, 3, 5] {
            let (g, t) = triangular_table(p);
            let r = make_ring(g.clone(), t).unwrap();
            assert!(!r.is_commutative());
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(r.mul(&x, &y).0, matmul(p, &x.0, &y.0));
                }
            }
        }
        let (g, t) = triangular_table(2);
        let r = make_ring(g, t).unwrap();
        let (e11, e12) = (e(&[1, 0, 0]), e(&[0, 1, 0]));
        assert_eq!(r.mul(&e11, &e12), e12);
        assert_eq!(r.mul(&e12, &e11), e(&[0, 0, 0]));
        assert_eq!(r.mul(&e(&[0, 0, 0]), &e12), e(&[0, 0, 0]));
    }

    #[test]
    fn rejects_bad_tables() {
        // Z2 x Z4: g0 * g1 = (0, 1) has order 4 but gcd(2, 4) = 2 must kill it
        let g = normalize_factors(&[2, 4]).unwrap();
        let mut t = StructureTable::zero(&g);
        t.set(0, 1, e(&[0, 1]));
        assert_eq!(
            make_ring(g.clone(), t),
            Err(RingError::NotWellDefined(0, 1))
        );

        // a*a = b, everything else zero except b*a = a: (aa)a = ba = a, a(aa) = ab = 0
        let g = normalize_factors(&[2, 2]).unwrap();
        let mut t = StructureTable::zero(&g);
        t.set(0, 0, e(&[0, 1]));
        t.set(1, 0, e(&[1, 0]));
        assert!(matches!(
            make_ring(g.clone(), t),
            Err(RingError::NotAssociative(..))
        ));

        let t = StructureTable::new(vec![vec![e(&[0, 0])]]);
        assert!(matches!(make_ring(g, t), Err(RingError::TableShape { .. })));
    }

    #[test]
    fn generator_check_agrees_with_full_audit_on_order_four() {
        for f in [vec![4u64], vec![2, 2]] {
            let g = normalize_factors(&f).unwrap();
            let k = g.rank();
            let n = g.order() as usize;
            let cells = k * k;
            for code in 0..n.pow(cells as u32) {
                let mut c = code;
                let mut t = StructureTable::zero(&g);
                for cell in 0..cells {
                    t.set(cell / k, cell % k, g.element(c % n));
                    c /= n;
                }
                let fast = validate_table(&g, &t).unwrap();
                let slow = audit_table_exhaustive(&g, &t).unwrap();
                assert_eq!(fast.is_valid(), slow.is_valid(), "{:?}", t.to_coords());
                if let Ok(r) = make_ring(g.clone(), t) {
                    assert!(r.audit_full());
                    let brute = (0..n).all(|x| (0..n).all(|y| r.mul_idx(x, y) == r.mul_idx(y, x)));
                    assert_eq!(brute, r.is_commutative());
                }
            }
        }
    }

    #[test]
    fn presentation_transport_preserves_products() {
        // ring on Z4 x Z2 (non-canonical order): u*u = u, u*v = v, v*v = 0, v*u = 0
        let raw = [4u64, 2];
        let t = StructureTable::from_coords(vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 0], vec![0, 0]],
        ]);
        let r = FiniteRing::from_presentation(&raw, &t).unwrap();
        assert_eq!(r.group().factors(), &[2, 4]);
        let norm = Normalization::new(&raw, DEFAULT_MAX_ORDER).unwrap();
        let b = Bilinear::new(&raw, &t);
        for a0 in 0..4 {
            for a1 in 0..2 {
                for c0 in 0..4 {
                    for c1 in 0..2 {
                        let (x, y) = ([a0, a1], [c0, c1]);
                        let lhs = norm.forward(&b.mul(&x, &y));
                        let rhs = r.mul(&norm.forward(&x), &norm.forward(&y));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn direct_sums() {
        let g2 = normalize_factors(&[2]).unwrap();
        let z = make_ring(g2.clone(), StructureTable::zero(&g2)).unwrap();
        let zz = direct_sum(&z, &z).unwrap();
        assert_eq!(zz.group().factors(), &[2, 2]);
        assert!(zz
            .table()
            .rows()
            .iter()
            .flatten()
            .all(|e| e.0.iter().all(|&c| c == 0)));

        let (g, t) = triangular_table(2);
        let t2 = make_ring(g, t).unwrap();
        let (g, t) = triangular_table(3);
        let t3 = make_ring(g, t).unwrap();
        let s = direct_sum(&t2, &t3).unwrap();
        assert_eq!(s.order(), 216);
        assert_eq!(s.group().factors(), &[6, 6, 6]);
        assert!(!s.is_commutative());

        let g3 = normalize_factors(&[3]).unwrap();
        let z3 = make_ring(g3.clone(), StructureTable::zero(&g3)).unwrap();
        assert!(!direct_sum(&t2, &z3).unwrap().is_commutative());
        assert!(audit(&direct_sum(&t2, &z3).unwrap()));
    }

    fn audit(r: &FiniteRing) -> bool {
        r.audit_full()
    }

    #[test]
    fn bilinear_on_samples() {
        let (g, t) = triangular_table(3);
        let r = make_ring(g.clone(), t).unwrap();
        let n = r.order() as usize;
        for x in (0..n).step_by(4) {
            for x2 in (0..n).step_by(5) {
                for y in (0..n).step_by(3) {
                    let lhs = r.mul_idx(g.add_idx(x, x2), y);
                    let rhs = g.add_idx(r.mul_idx(x, y), r.mul_idx(x2, y));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

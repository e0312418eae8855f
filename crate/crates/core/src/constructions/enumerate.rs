use std::collections::HashSet;

use crate::abelian::{GroupElement, InvariantFactors};
use crate::arith::gcd;
use crate::error::EnumerationError;
use crate::ring::{make_ring, FiniteRing, StructureTable};

use super::dedup::{Canonicalizer, DEFAULT_AUTOMORPHISM_BUDGET};

/// Default ceiling on `k^2 * ceil(log2 |G|)`, the size of the raw table space
/// in bits.
pub const DEFAULT_BUDGET_BITS: u64 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DedupMode {
    None,
    AdditiveAutomorphism,
}

impl DedupMode {
    /// On for rings of order at most 16, off above.
    pub fn default_for(order: u64) -> Self {
        if order <= 16 {
            DedupMode::AdditiveAutomorphism
        } else {
            DedupMode::None
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DedupMode::None => "off",
            DedupMode::AdditiveAutomorphism => "on",
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    pub require_noncommutative: bool,
    pub dedup: DedupMode,
    pub limit: Option<usize>,
    /// `(worker_id, worker_count)`: only subtrees whose prefix rank is
    /// congruent to `worker_id` are explored.
    pub prefix_partition: Option<(usize, usize)>,
    pub budget_bits: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            require_noncommutative: false,
            dedup: DedupMode::None,
            limit: None,
            prefix_partition: None,
            budget_bits: DEFAULT_BUDGET_BITS,
        }
    }
}

/// A ring produced by the enumerator, tagged with the rank of the prefix
/// subtree it came from.
#[derive(Clone, Debug)]
pub struct EnumeratedRing {
    pub prefix_rank: u64,
    pub ring: FiniteRing,
}

/// `k^2 * ceil(log2 |G|)`.
pub fn search_bits(g: &InvariantFactors) -> u64 {
    let k = g.rank() as u64;
    let n = g.order();
    let log = 64 - (n.max(1) - 1).leading_zeros() as u64;
    k * k * log
}

/// Depth-first enumeration of all associative, well-defined structure tables
/// on a fixed additive group.
///
/// Cells are assigned row-major. After each assignment every generator
/// triple whose products have just become fully determined is checked, and
/// the subtree is abandoned on the first failure. Cell domains already
/// exclude values violating `gcd(d_i, d_j) * entry = 0`.
pub struct Enumeration {
    g: InvariantFactors,
    k: usize,
    coords: Vec<Vec<u64>>,
    domains: Vec<Vec<usize>>,
    values: Vec<usize>,
    choice: Vec<usize>,
    depth: usize,
    prefix_depth: usize,
    partition: Option<(usize, usize)>,
    require_noncommutative: bool,
    limit: Option<usize>,
    yielded: usize,
    done: bool,
    dedup: Option<(Canonicalizer, HashSet<StructureTable>)>,
}

pub fn enumerate_tables(
    g: &InvariantFactors,
    opts: &EnumerationOptions,
) -> Result<Enumeration, EnumerationError> {
    let bits = search_bits(g);
    if bits > opts.budget_bits {
        return Err(EnumerationError::BudgetExceeded {
            bits,
            budget: opts.budget_bits,
        });
    }
    if let Some((id, count)) = opts.prefix_partition {
        if id >= count {
            return Err(EnumerationError::BadPartition(id, count));
        }
    }
    let k = g.rank();
    let n = g.order() as usize;
    let coords: Vec<Vec<u64>> = (0..n).map(|i| g.element(i).0).collect();
    let domains: Vec<Vec<usize>> = (0..k * k)
        .map(|c| g.annihilated_by(gcd(g.factors()[c / k], g.factors()[c % k])))
        .collect();
    let prefix_depth = match opts.prefix_partition {
        Some((_, count)) if count > 1 => {
            let mut d = 0;
            let mut space = 1usize;
            while d < domains.len() && space < 8 * count {
                space = space.saturating_mul(domains[d].len());
                d += 1;
            }
            d
        }
        _ => 0,
    };
    let dedup = match opts.dedup {
        DedupMode::None => None,
        DedupMode::AdditiveAutomorphism => Some((
            Canonicalizer::new(g, DEFAULT_AUTOMORPHISM_BUDGET)?,
            HashSet::new(),
        )),
    };
    Ok(Enumeration {
        g: g.clone(),
        k,
        coords,
        values: vec![0; k * k],
        choice: vec![0; k * k],
        domains,
        depth: 0,
        prefix_depth,
        partition: opts.prefix_partition.filter(|&(_, c)| c > 1),
        require_noncommutative: opts.require_noncommutative,
        limit: opts.limit,
        yielded: 0,
        done: false,
        dedup,
    })
}

impl Enumeration {
    fn cells(&self) -> usize {
        self.k * self.k
    }

    fn prefix_rank(&self) -> u64 {
        (0..self.prefix_depth).fold(0u64, |acc, c| {
            acc * self.domains[c].len() as u64 + self.choice[c] as u64
        })
    }

    fn owns_prefix(&self) -> bool {
        match self.partition {
            Some((id, count)) => self.prefix_rank() % count as u64 == id as u64,
            None => true,
        }
    }

    /// `sum_a coef[a] * cell(row(a), col(a))`, or `None` if a needed cell is
    /// unassigned. `reads_last` is set when the newest cell is read.
    fn combine(
        &self,
        coef: usize,
        cell_of: impl Fn(usize) -> usize,
        last: usize,
        reads_last: &mut bool,
    ) -> Option<Vec<u64>> {
        let factors = self.g.factors();
        let mut acc = vec![0u64; self.k];
        for (a, &ca) in self.coords[coef].iter().enumerate() {
            if ca == 0 {
                continue;
            }
            let cell = cell_of(a);
            if cell > last {
                return None;
            }
            *reads_last |= cell == last;
            for ((s, &v), &d) in acc
                .iter_mut()
                .zip(&self.coords[self.values[cell]])
                .zip(factors)
            {
                *s = ((*s as u128 + ca as u128 * v as u128) % d as u128) as u64;
            }
        }
        Some(acc)
    }

    /// Checks every triple that became determined with the assignment of
    /// cell `last`.
    fn consistent(&self, last: usize) -> bool {
        let k = self.k;
        for i in 0..k {
            for j in 0..k {
                let ij = i * k + j;
                if ij > last {
                    continue;
                }
                for l in 0..k {
                    let jl = j * k + l;
                    if jl > last {
                        continue;
                    }
                    let mut reads_last = ij == last || jl == last;
                    // (g_i g_j) g_l = sum_a T[i][j]_a T[a][l]
                    let Some(left) =
                        self.combine(self.values[ij], |a| a * k + l, last, &mut reads_last)
                    else {
                        continue;
                    };
                    // g_i (g_j g_l) = sum_a T[j][l]_a T[i][a]
                    let Some(right) =
                        self.combine(self.values[jl], |a| i * k + a, last, &mut reads_last)
                    else {
                        continue;
                    };
                    if reads_last && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn leaf(&self) -> FiniteRing {
        let k = self.k;
        let rows = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| GroupElement(self.coords[self.values[i * k + j]].clone()))
                    .collect()
            })
            .collect();
        make_ring(self.g.clone(), StructureTable::new(rows))
            .expect("pruned search yields only valid tables")
    }

    /// Advances to the next complete assignment.
    fn next_leaf(&mut self) -> Option<(u64, FiniteRing)> {
        if self.done {
            return None;
        }
        let cells = self.cells();
        if cells == 0 {
            self.done = true;
            return self.owns_prefix().then(|| (0, self.leaf()));
        }
        loop {
            let d = self.depth;
            if self.choice[d] >= self.domains[d].len() {
                if d == 0 {
                    self.done = true;
                    return None;
                }
                self.choice[d] = 0;
                self.depth -= 1;
                self.choice[self.depth] += 1;
                continue;
            }
            self.values[d] = self.domains[d][self.choice[d]];
            let mut ok = self.consistent(d);
            if ok && d + 1 == self.prefix_depth {
                ok = self.owns_prefix();
            }
            if !ok {
                self.choice[d] += 1;
                continue;
            }
            if d + 1 == cells {
                let out = (self.prefix_rank(), self.leaf());
                self.choice[d] += 1;
                return Some(out);
            }
            self.depth += 1;
            self.choice[self.depth] = 0;
        }
    }
}

impl Iterator for Enumeration {
    type Item = EnumeratedRing;

    fn next(&mut self) -> Option<EnumeratedRing> {
        if self.limit.is_some_and(|l| self.yielded >= l) {
            return None;
        }
        loop {
            let (prefix_rank, mut ring) = self.next_leaf()?;
            if self.require_noncommutative && ring.is_commutative() {
                continue;
            }
            if let Some((canon, seen)) = &mut self.dedup {
                let rep = canon.canonical_ring(&ring);
                if !seen.insert(rep.table().clone()) {
                    continue;
                }
                ring = rep;
            }
            self.yielded += 1;
            return Some(EnumeratedRing { prefix_rank, ring });
        }
    }
}

/// Enumerates a group with `workers` prefix-partitioned threads and merges
/// the results into the same deterministic order as a single-worker run.
pub fn enumerate_group(
    g: &InvariantFactors,
    opts: &EnumerationOptions,
    workers: usize,
) -> Result<Vec<FiniteRing>, EnumerationError> {
    let workers = workers.max(1);
    if workers == 1 {
        return Ok(enumerate_tables(g, opts)?.map(|e| e.ring).collect());
    }
    let worker_opts: Vec<EnumerationOptions> = (0..workers)
        .map(|id| EnumerationOptions {
            prefix_partition: Some((id, workers)),
            limit: None,
            ..opts.clone()
        })
        .collect();
    let parts: Vec<Result<Vec<EnumeratedRing>, EnumerationError>> = std::thread::scope(|s| {
        let handles: Vec<_> = worker_opts
            .iter()
            .map(|o| s.spawn(move || enumerate_tables(g, o).map(|e| e.collect::<Vec<_>>())))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut merged = Vec::new();
    for part in parts {
        merged.extend(part?);
    }
    // each prefix belongs to one worker, so a stable sort restores DFS order
    merged.sort_by_key(|e| e.prefix_rank);
    let mut out: Vec<FiniteRing> = Vec::with_capacity(merged.len());
    let mut seen = HashSet::new();
    for e in merged {
        if opts.dedup == DedupMode::AdditiveAutomorphism && !seen.insert(e.ring.table().clone()) {
            continue;
        }
        out.push(e.ring);
    }
    if let Some(l) = opts.limit {
        out.truncate(l);
    }
    Ok(out)
}

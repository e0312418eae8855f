//! Executable checks for each claim about commuting probabilities and
//! centralizer counts, evaluated over a corpus of rings.
//!
//! Each claim has a hypothesis and a conclusion. A check is `refuted` as soon
//! as one ring satisfies the hypothesis but not the conclusion, `vacuous`
//! when no ring satisfies the hypothesis, and `confirmed` otherwise.
//! Non-existence claims are never vacuous: they need a complete enumeration
//! of their scope, and without one they report an error.

mod build;
mod report;

pub use build::{build_corpus, desk_request, CorpusRequest, DedupChoice, RingSpec};
pub use report::{render_json, render_text, Summary, SummaryRow};

use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use crate::abelian::{groups_of_order, is_cyclic, InvariantFactors};
use crate::arith::{is_prime, smallest_prime_divisor};
use crate::constructions::{Corpus, CorpusEntry, RingDocument, RingInvariants};
use crate::error::VerifyError;
use crate::probability::{pr_formula_pp, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TheoremId {
    T0,
    T1a,
    T1b,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T11,
}

impl TheoremId {
    pub const ALL: [TheoremId; 13] = [
        TheoremId::T0,
        TheoremId::T1a,
        TheoremId::T1b,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
        TheoremId::T9,
        TheoremId::T10,
        TheoremId::T11,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T0 => "T0",
            TheoremId::T1a => "T1a",
            TheoremId::T1b => "T1b",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::T4 => "T4",
            TheoremId::T5 => "T5",
            TheoremId::T6 => "T6",
            TheoremId::T7 => "T7",
            TheoremId::T8 => "T8",
            TheoremId::T9 => "T9",
            TheoremId::T10 => "T10",
            TheoremId::T11 => "T11",
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            TheoremId::T6 | TheoremId::T7 => Mode::Unconditional,
            _ => Mode::Conditional,
        }
    }

    /// Short statement of the claim being checked.
    pub fn claim(self) -> &'static str {
        match self {
            TheoremId::T0 => "R noncommutative => R/Z(R) not cyclic",
            TheoremId::T1a => "R/Z(R) = Z2xZ2 <=> Pr(R) = 5/8",
            TheoremId::T1b => "p = least prime dividing |R|: R/Z(R) = ZpxZp <=> Pr(R) = (p^2+p-1)/p^3",
            TheoremId::T2 => "R/Z(R) = ZpxZp => |Cent(R)| = p+2, Pr(R) = (p^2+p-1)/p^3, proper centralizers of order p|Z|",
            TheoremId::T3 => "R/Z(R) = Z2xZ2 <=> |Cent(R)| = 4 <=> Pr(R) = 5/8; R/Z(R) = Z3xZ3 <=> |Cent(R)| = 5 => Pr(R) = 11/27",
            TheoremId::T4 => "R/Z(R) = Z2xZ10 => |Cent(R)| = 6",
            TheoremId::T5 => "R/Z(R) in {Z4xZ4, Z2xZ12, Z3xZ6} => |Cent(R)| = 8",
            TheoremId::T6 => "no noncommutative R has R/Z(R) = Z2xZ4",
            TheoremId::T7 => "no R has |Cent(R)| in {2, 3}",
            TheoremId::T8 => "|Cent(R)| = 6 => |R:Z(R)| in {8,12,16}, R/Z(R) in {Z2^3, Z2xZ6, Z2xZ8, Z2^2xZ4, Z2^4}",
            TheoremId::T9 => "|Cent(R)| = 6, R/Z(R) not Z2^2xZ4 or Z2^4 => Pr(R) in {7/16, 35/72, 29/64}; R/Z(R) = Z2xZ6 => |Cent(R)| = 6",
            TheoremId::T10 => "|Cent(R)| = 7 => |R:Z(R)| in {12,18,20,24,25}, R/Z(R) in {Z2^2xZ6, Z5xZ5}",
            TheoremId::T11 => "|Cent(R)| = 7, R/Z(R) not Z2^2xZ6 => Pr(R) = 29/125",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, VerifyError> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| VerifyError::UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Conditional,
    Unconditional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Confirmed,
    Refuted,
    Vacuous,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Confirmed => "confirmed",
            Status::Refuted => "refuted",
            Status::Vacuous => "vacuous",
        }
    }
}

/// A corpus position and its provenance tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingRef {
    pub index: usize,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub reference: RingRef,
    pub reason: String,
    pub ring: RingDocument,
}

/// Observed values for a case the claim leaves open.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub quotient: InvariantFactors,
    pub centralizers: usize,
    pub pr: Rational,
    pub rings: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub id: TheoremId,
    pub mode: Mode,
    pub status: Status,
    pub witnesses: Vec<RingRef>,
    pub counterexample: Option<Counterexample>,
    /// Quotient types named in the hypothesis with no witness in the corpus.
    pub unwitnessed: Vec<InvariantFactors>,
    pub observed: Vec<Observation>,
    /// Scope of a completeness-gated claim.
    pub scope: Option<String>,
}

/// Largest order whose complete enumeration non-existence claims require.
pub const DEFAULT_EXHAUSTIVE_ORDER: u64 = 8;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub exhaustive_order: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive_order: DEFAULT_EXHAUSTIVE_ORDER,
        }
    }
}

fn ty(f: &[u64]) -> InvariantFactors {
    InvariantFactors::from_canonical(f.to_vec()).expect("canonical literal")
}

fn prime_square(q: &InvariantFactors) -> Option<u64> {
    match q.factors() {
        [a, b] if a == b && is_prime(*a) => Some(*a),
        _ => None,
    }
}

type Claim<'a> = dyn Fn(&RingInvariants) -> Result<(), String> + 'a;

struct Scan {
    witnesses: Vec<RingRef>,
    counterexample: Option<Counterexample>,
}

fn scan(corpus: &Corpus, hypothesis: impl Fn(&RingInvariants) -> bool, claim: &Claim<'_>) -> Scan {
    let mut witnesses = Vec::new();
    let mut counterexample = None;
    for (index, e) in corpus.entries.iter().enumerate() {
        let inv = &e.invariants;
        if !hypothesis(inv) {
            continue;
        }
        match claim(inv) {
            Ok(()) => witnesses.push(reference(index, e)),
            Err(reason) => {
                if counterexample.is_none() {
                    counterexample = Some(Counterexample {
                        reference: reference(index, e),
                        reason,
                        ring: RingDocument::of(&e.ring),
                    });
                }
            }
        }
    }
    Scan {
        witnesses,
        counterexample,
    }
}

fn reference(index: usize, e: &CorpusEntry) -> RingRef {
    RingRef {
        index,
        provenance: e.provenance.clone(),
    }
}

fn ensure(ok: bool, inv: &RingInvariants, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!(
            "{what} (quotient {}, centralizers {}, Pr {}, index {})",
            inv.quotient, inv.centralizers, inv.pr, inv.index
        ))
    }
}

fn conditional(id: TheoremId, s: Scan) -> TheoremCheck {
    let status = if s.counterexample.is_some() {
        Status::Refuted
    } else if s.witnesses.is_empty() {
        Status::Vacuous
    } else {
        Status::Confirmed
    };
    TheoremCheck {
        id,
        mode: id.mode(),
        status,
        witnesses: s.witnesses,
        counterexample: s.counterexample,
        unwitnessed: Vec::new(),
        observed: Vec::new(),
        scope: None,
    }
}

fn unwitnessed(
    corpus: &Corpus,
    types: &[InvariantFactors],
    extra: impl Fn(&RingInvariants) -> bool,
) -> Vec<InvariantFactors> {
    types
        .iter()
        .filter(|t| {
            !corpus
                .entries
                .iter()
                .any(|e| &e.invariants.quotient == *t && extra(&e.invariants))
        })
        .cloned()
        .collect()
}

fn observe(corpus: &Corpus, select: impl Fn(&RingInvariants) -> bool) -> Vec<Observation> {
    let mut out: Vec<Observation> = Vec::new();
    for e in &corpus.entries {
        let inv = &e.invariants;
        if !select(inv) {
            continue;
        }
        match out.iter_mut().find(|o| {
            o.quotient == inv.quotient && o.centralizers == inv.centralizers && o.pr == inv.pr
        }) {
            Some(o) => o.rings += 1,
            None => out.push(Observation {
                quotient: inv.quotient.clone(),
                centralizers: inv.centralizers,
                pr: inv.pr,
                rings: 1,
            }),
        }
    }
    out.sort_by(|a, b| {
        (&a.quotient, a.centralizers, a.pr).cmp(&(&b.quotient, b.centralizers, b.pr))
    });
    out
}

/// Orders `n <= limit` for which every additive group has a complete
/// enumeration section.
fn complete_orders(corpus: &Corpus, limit: u64) -> Vec<u64> {
    let have = corpus.complete_groups();
    (1..=limit)
        .filter(|&n| groups_of_order(n).iter().all(|g| have.contains(g)))
        .collect()
}

fn exhaustive(
    id: TheoremId,
    corpus: &Corpus,
    needed: Vec<u64>,
    claim: &Claim<'_>,
) -> Result<TheoremCheck, VerifyError> {
    let s = scan(corpus, |_| true, claim);
    let scope = format!("orders {needed:?}");
    if s.counterexample.is_none() {
        let have = complete_orders(corpus, needed.iter().copied().max().unwrap_or(0));
        if needed.is_empty() || !needed.iter().all(|n| have.contains(n)) {
            return Err(VerifyError::MissingCompleteness {
                id: id.as_str(),
                scope,
            });
        }
    }
    let status = if s.counterexample.is_some() {
        Status::Refuted
    } else {
        Status::Confirmed
    };
    Ok(TheoremCheck {
        id,
        mode: id.mode(),
        status,
        witnesses: s.witnesses,
        counterexample: s.counterexample,
        unwitnessed: Vec::new(),
        observed: Vec::new(),
        scope: Some(scope),
    })
}

pub fn verify(id: TheoremId, corpus: &Corpus) -> Result<TheoremCheck, VerifyError> {
    verify_with(id, corpus, &VerifyOptions::default())
}

pub fn verify_with(
    id: TheoremId,
    corpus: &Corpus,
    opts: &VerifyOptions,
) -> Result<TheoremCheck, VerifyError> {
    let q22 = ty(&[2, 2]);
    let q33 = ty(&[3, 3]);
    let five_eighths = Rational::new(5, 8);
    let check = match id {
        TheoremId::T0 => conditional(
            id,
            scan(corpus, |i| !i.commutative, &|i| {
                ensure(!is_cyclic(&i.quotient), i, "cyclic central quotient")
            }),
        ),
        TheoremId::T1a => conditional(
            id,
            scan(
                corpus,
                |i| i.quotient == q22 || i.pr == five_eighths,
                &|i| {
                    ensure(
                        i.quotient == q22 && i.pr == five_eighths,
                        i,
                        "quotient Z2xZ2 and Pr 5/8 disagree",
                    )
                },
            ),
        ),
        TheoremId::T1b => {
            let target = |i: &RingInvariants| {
                smallest_prime_divisor(i.order)
                    .map(|p| (p, pr_formula_pp(p).expect("least divisor is prime")))
            };
            conditional(
                id,
                scan(
                    corpus,
                    |i| {
                        target(i)
                            .is_some_and(|(p, f)| prime_square(&i.quotient) == Some(p) || i.pr == f)
                    },
                    &|i| {
                        let (p, f) = target(i).expect("hypothesis implies a prime divisor");
                        ensure(
                            prime_square(&i.quotient) == Some(p) && i.pr == f,
                            i,
                            "quotient ZpxZp and Pr formula disagree",
                        )
                    },
                ),
            )
        }
        TheoremId::T2 => conditional(
            id,
            scan(corpus, |i| prime_square(&i.quotient).is_some(), &|i| {
                let p = prime_square(&i.quotient).expect("hypothesis");
                ensure(
                    i.centralizers as u64 == p + 2,
                    i,
                    "centralizer count is not p+2",
                )?;
                ensure(
                    i.pr == pr_formula_pp(p).expect("prime"),
                    i,
                    "Pr differs from (p^2+p-1)/p^3",
                )?;
                ensure(
                    i.coset_sizes == vec![p; p as usize + 1],
                    i,
                    "proper centralizers are not p+1 subgroups of index p over the center",
                )
            }),
        ),
        TheoremId::T3 => conditional(
            id,
            scan(
                corpus,
                |i| {
                    i.quotient == q22
                        || i.quotient == q33
                        || matches!(i.centralizers, 4 | 5)
                        || i.pr == five_eighths
                },
                &|i| {
                    ensure(
                        (i.quotient == q22) == (i.centralizers == 4),
                        i,
                        "Z2xZ2 quotient vs 4 centralizers",
                    )?;
                    ensure(
                        (i.quotient == q33) == (i.centralizers == 5),
                        i,
                        "Z3xZ3 quotient vs 5 centralizers",
                    )?;
                    ensure(
                        (i.centralizers == 4) == (i.pr == five_eighths),
                        i,
                        "4 centralizers vs Pr 5/8",
                    )?;
                    ensure(
                        i.centralizers != 5 || i.pr == Rational::new(11, 27),
                        i,
                        "5 centralizers but Pr not 11/27",
                    )
                },
            ),
        ),
        TheoremId::T4 => {
            let types = [ty(&[2, 10])];
            let mut c = conditional(
                id,
                scan(corpus, |i| types.contains(&i.quotient), &|i| {
                    ensure(i.centralizers == 6, i, "centralizer count is not 6")
                }),
            );
            c.unwitnessed = unwitnessed(corpus, &types, |_| true);
            c
        }
        TheoremId::T5 => {
            let types = [ty(&[4, 4]), ty(&[2, 12]), ty(&[3, 6])];
            let mut c = conditional(
                id,
                scan(corpus, |i| types.contains(&i.quotient), &|i| {
                    ensure(i.centralizers == 8, i, "centralizer count is not 8")
                }),
            );
            c.unwitnessed = unwitnessed(corpus, &types, |_| true);
            c
        }
        TheoremId::T6 => {
            let q24 = ty(&[2, 4]);
            let needed: Vec<u64> = (8..=opts.exhaustive_order).step_by(8).collect();
            exhaustive(id, corpus, needed, &|i| {
                ensure(
                    i.commutative || i.quotient != q24,
                    i,
                    "noncommutative with quotient Z2xZ4",
                )
            })?
        }
        TheoremId::T7 => {
            let needed: Vec<u64> = (1..=opts.exhaustive_order).collect();
            exhaustive(id, corpus, needed, &|i| {
                ensure(
                    !matches!(i.centralizers, 2 | 3),
                    i,
                    "2 or 3 distinct centralizers",
                )
            })?
        }
        TheoremId::T8 => {
            let types = [
                ty(&[2, 2, 2]),
                ty(&[2, 6]),
                ty(&[2, 8]),
                ty(&[2, 2, 4]),
                ty(&[2, 2, 2, 2]),
            ];
            let mut c = conditional(
                id,
                scan(corpus, |i| i.centralizers == 6, &|i| {
                    ensure(matches!(i.index, 8 | 12 | 16), i, "index not in {8,12,16}")?;
                    ensure(
                        types.contains(&i.quotient),
                        i,
                        "quotient outside the listed types",
                    )
                }),
            );
            c.unwitnessed = unwitnessed(corpus, &types, |i| i.centralizers == 6);
            c
        }
        TheoremId::T9 => {
            let open = [ty(&[2, 2, 4]), ty(&[2, 2, 2, 2])];
            let types = [ty(&[2, 2, 2]), ty(&[2, 6]), ty(&[2, 8])];
            let q26 = ty(&[2, 6]);
            let values = [
                Rational::new(7, 16),
                Rational::new(35, 72),
                Rational::new(29, 64),
            ];
            let mut c = conditional(
                id,
                scan(
                    corpus,
                    |i| (i.centralizers == 6 && !open.contains(&i.quotient)) || i.quotient == q26,
                    &|i| {
                        ensure(
                            i.quotient != q26 || i.centralizers == 6,
                            i,
                            "Z2xZ6 quotient without 6 centralizers",
                        )?;
                        ensure(values.contains(&i.pr), i, "Pr outside {7/16, 35/72, 29/64}")
                    },
                ),
            );
            c.unwitnessed = unwitnessed(corpus, &types, |i| i.centralizers == 6);
            c.observed = observe(corpus, |i| {
                i.centralizers == 6 && open.contains(&i.quotient)
            });
            c
        }
        TheoremId::T10 => {
            let types = [ty(&[2, 2, 6]), ty(&[5, 5])];
            let mut c = conditional(
                id,
                scan(corpus, |i| i.centralizers == 7, &|i| {
                    ensure(
                        matches!(i.index, 12 | 18 | 20 | 24 | 25),
                        i,
                        "index not in {12,18,20,24,25}",
                    )?;
                    ensure(
                        types.contains(&i.quotient),
                        i,
                        "quotient outside the listed types",
                    )
                }),
            );
            c.unwitnessed = unwitnessed(corpus, &types, |i| i.centralizers == 7);
            c
        }
        TheoremId::T11 => {
            let open = ty(&[2, 2, 6]);
            let mut c = conditional(
                id,
                scan(
                    corpus,
                    |i| i.centralizers == 7 && i.quotient != open,
                    &|i| ensure(i.pr == Rational::new(29, 125), i, "Pr is not 29/125"),
                ),
            );
            c.observed = observe(corpus, |i| i.centralizers == 7 && i.quotient == open);
            c
        }
    };
    Ok(check)
}

/// Outcome of running the registry over one corpus.
#[derive(Debug)]
pub struct VerifyReport {
    pub outcomes: Vec<(TheoremId, Result<TheoremCheck, VerifyError>)>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn any_refuted(&self) -> bool {
        self.outcomes
            .iter()
            .any(|(_, r)| matches!(r, Ok(c) if c.status == Status::Refuted))
    }

    pub fn any_error(&self) -> bool {
        self.outcomes.iter().any(|(_, r)| r.is_err())
    }

    /// 0 when everything is confirmed or vacuous, 2 on any refutation, 1
    /// when a check could not be evaluated.
    pub fn exit_code(&self) -> i32 {
        if self.any_refuted() {
            2
        } else if self.any_error() {
            1
        } else {
            0
        }
    }
}

pub fn verify_ids(ids: &[TheoremId], corpus: &Corpus, opts: &VerifyOptions) -> VerifyReport {
    let mut ids = ids.to_vec();
    ids.sort();
    ids.dedup();
    VerifyReport {
        outcomes: ids
            .iter()
            .map(|&id| (id, verify_with(id, corpus, opts)))
            .collect(),
        summary: Summary::of(corpus),
    }
}

/// Runs every check in id order.
pub fn verify_all(corpus: &Corpus) -> VerifyReport {
    verify_ids(&TheoremId::ALL, corpus, &VerifyOptions::default())
}

use serde::Serialize;
use serde_json::json;
use std::fmt::Write;

use crate::abelian::InvariantFactors;
use crate::constructions::Corpus;
use crate::probability::Rational;

use super::{Status, VerifyReport};

/// Observed (centralizer count, quotient, Pr) combinations over the
/// noncommutative rings of a corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub rings: usize,
    pub noncommutative: usize,
    /// Rings where pair counting and the centralizer-sum formula agree.
    pub formula_agreement: usize,
    pub rows: Vec<SummaryRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub centralizers: usize,
    pub quotient: InvariantFactors,
    pub pr: Rational,
    pub rings: usize,
}

impl Summary {
    pub fn of(corpus: &Corpus) -> Self {
        let mut rows: Vec<SummaryRow> = Vec::new();
        for e in corpus.entries.iter().filter(|e| !e.invariants.commutative) {
            let inv = &e.invariants;
            match rows.iter_mut().find(|r| {
                r.centralizers == inv.centralizers && r.quotient == inv.quotient && r.pr == inv.pr
            }) {
                Some(r) => r.rings += 1,
                None => rows.push(SummaryRow {
                    centralizers: inv.centralizers,
                    quotient: inv.quotient.clone(),
                    pr: inv.pr,
                    rings: 1,
                }),
            }
        }
        rows.sort_by(|a, b| {
            (a.centralizers, &a.quotient, a.pr).cmp(&(b.centralizers, &b.quotient, b.pr))
        });
        Summary {
            rings: corpus.len(),
            noncommutative: corpus
                .entries
                .iter()
                .filter(|e| !e.invariants.commutative)
                .count(),
            formula_agreement: corpus
                .entries
                .iter()
                .filter(|e| e.invariants.pr == e.invariants.pr_centralizer_sum)
                .count(),
            rows,
        }
    }
}

fn list(types: &[InvariantFactors]) -> String {
    types
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Line-oriented report: one `theorem` line per check, indented detail
/// lines, then the summary table.
pub fn render_text(report: &VerifyReport) -> String {
    let mut out = String::new();
    for (id, result) in &report.outcomes {
        match result {
            Ok(c) => {
                let _ = writeln!(
                    out,
                    "theorem {id} status={} mode={} witnesses={} claim=\"{}\"",
                    c.status.as_str(),
                    match c.mode {
                        super::Mode::Conditional => "conditional",
                        super::Mode::Unconditional => "unconditional",
                    },
                    c.witnesses.len(),
                    id.claim()
                );
                if let Some(scope) = &c.scope {
                    let _ = writeln!(out, "  scope {scope}");
                }
                if !c.unwitnessed.is_empty() {
                    let _ = writeln!(out, "  unwitnessed {}", list(&c.unwitnessed));
                }
                for o in &c.observed {
                    let _ = writeln!(
                        out,
                        "  observed quotient={} centralizers={} pr={} rings={}",
                        o.quotient, o.centralizers, o.pr, o.rings
                    );
                }
                if let (Status::Refuted, Some(ce)) = (c.status, &c.counterexample) {
                    let _ = writeln!(
                        out,
                        "  counterexample {} reason=\"{}\" ring={}",
                        ce.reference.provenance,
                        ce.reason,
                        serde_json::to_string(&ce.ring).expect("serializable")
                    );
                }
            }
            Err(e) => {
                let _ = writeln!(out, "theorem {id} status=error claim=\"{}\"", id.claim());
                let _ = writeln!(out, "  error {e}");
            }
        }
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "summary rings={} noncommutative={} formula_agreement={}/{}",
        s.rings, s.noncommutative, s.formula_agreement, s.rings
    );
    for r in &s.rows {
        let _ = writeln!(
            out,
            "  centralizers={} quotient={} pr={} rings={}",
            r.centralizers, r.quotient, r.pr, r.rings
        );
    }
    out
}

pub fn render_json(report: &VerifyReport) -> String {
    let checks: Vec<serde_json::Value> = report
        .outcomes
        .iter()
        .map(|(id, r)| match r {
            Ok(c) => {
                let mut v = serde_json::to_value(c).expect("serializable");
                v["claim"] = json!(id.claim());
                v
            }
            Err(e) => {
                json!({ "id": id, "status": "error", "claim": id.claim(), "error": e.to_string() })
            }
        })
        .collect();
    let doc = json!({ "theorems": checks, "summary": report.summary });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

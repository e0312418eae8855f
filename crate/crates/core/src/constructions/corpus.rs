use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{identify_type, quotient_census, InvariantFactors};
use crate::centralizer::{centralizer_family, coset_profile, ProfileViolation};
use crate::error::FileError;
use crate::probability::{pr_centralizer_sum, pr_pairs, Rational};
use crate::ring::FiniteRing;

use super::file::RingDocument;

/// Everything the theorem checks read from a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingInvariants {
    pub order: u64,
    pub commutative: bool,
    pub center_order: u64,
    pub index: u64,
    pub quotient: InvariantFactors,
    pub centralizers: usize,
    pub pr: Rational,
    pub pr_centralizer_sum: Rational,
    pub coset_sizes: Vec<u64>,
}

impl RingInvariants {
    pub fn compute(r: &FiniteRing) -> Result<Self, ProfileViolation> {
        let fam = centralizer_family(r);
        let census = quotient_census(r.group(), &fam.center).expect("the center is a subgroup");
        let quotient = identify_type(&census).expect("a quotient census identifies a group");
        let profile = coset_profile(r)?;
        Ok(RingInvariants {
            order: r.order(),
            commutative: r.is_commutative(),
            center_order: fam.center.order(),
            index: fam.index,
            quotient,
            centralizers: fam.count(),
            pr: pr_pairs(r),
            pr_centralizer_sum: pr_centralizer_sum(r),
            coset_sizes: profile.sizes,
        })
    }
}

/// A block of corpus entries sharing a provenance prefix. Enumerated
/// sections record whether they cover every table on their group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<InvariantFactors>,
    pub complete: bool,
    pub dedup: String,
    pub count: usize,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub ring: FiniteRing,
    pub provenance: String,
    pub invariants: RingInvariants,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub sections: Vec<Section>,
    pub entries: Vec<CorpusEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Record {
    Section(Section),
    Ring {
        provenance: String,
        ring: RingDocument,
        invariants: RingInvariants,
    },
}

impl Corpus {
    pub fn new() -> Self {
        Corpus::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends a section, computing invariants of its rings in parallel.
    pub fn push_section(
        &mut self,
        section: Section,
        rings: Vec<(String, FiniteRing)>,
    ) -> Result<(), ProfileViolation> {
        let entries: Vec<CorpusEntry> = rings
            .into_par_iter()
            .map(|(provenance, ring)| {
                RingInvariants::compute(&ring).map(|invariants| CorpusEntry {
                    ring,
                    provenance,
                    invariants,
                })
            })
            .collect::<Result<_, _>>()?;
        debug_assert_eq!(entries.len(), section.count);
        self.sections.push(section);
        self.entries.extend(entries);
        Ok(())
    }

    /// Additive groups with a complete enumeration section.
    pub fn complete_groups(&self) -> Vec<InvariantFactors> {
        let mut out: Vec<InvariantFactors> = self
            .sections
            .iter()
            .filter(|s| s.complete)
            .filter_map(|s| s.group.clone())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// One JSON record per line: all sections first, then rings.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out.push_str(
                &serde_json::to_string(&Record::Section(s.clone())).expect("serializable"),
            );
            out.push('\n');
        }
        for e in &self.entries {
            let rec = Record::Ring {
                provenance: e.provenance.clone(),
                ring: RingDocument::of(&e.ring),
                invariants: e.invariants.clone(),
            };
            out.push_str(&serde_json::to_string(&rec).expect("serializable"));
            out.push('\n');
        }
        out
    }

    /// Parses a corpus, re-validating every ring and recomputing its
    /// invariants; any disagreement with the stored record is an error.
    pub fn from_lines(text: &str) -> Result<Self, FileError> {
        let mut sections = Vec::new();
        let mut raw = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rec: Record = serde_json::from_str(line)
                .map_err(|e| FileError::Parse(format!("line {}: {e}", n + 1)))?;
            match rec {
                Record::Section(s) => sections.push(s),
                Record::Ring {
                    provenance,
                    ring,
                    invariants,
                } => raw.push((n + 1, provenance, ring, invariants)),
            }
        }
        let entries: Vec<CorpusEntry> = raw
            .into_par_iter()
            .map(|(line, provenance, doc, stored)| {
                let ring = doc.to_ring()?;
                let invariants =
                    RingInvariants::compute(&ring).map_err(|v| FileError::Corrupted {
                        line,
                        reason: v.to_string(),
                    })?;
                if invariants != stored {
                    return Err(FileError::Corrupted {
                        line,
                        reason: "stored invariants disagree with the ring".into(),
                    });
                }
                Ok(CorpusEntry {
                    ring,
                    provenance,
                    invariants,
                })
            })
            .collect::<Result<_, _>>()?;
        for s in &sections {
            let prefix = format!("{}:", s.tag);
            let have = entries
                .iter()
                .filter(|e| e.provenance.starts_with(&prefix) || e.provenance == s.tag)
                .count();
            if have != s.count {
                return Err(FileError::Corrupted {
                    line: 0,
                    reason: format!("section {} declares {} rings, found {have}", s.tag, s.count),
                });
            }
        }
        Ok(Corpus { sections, entries })
    }
}

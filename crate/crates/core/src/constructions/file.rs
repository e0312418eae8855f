use serde::{Deserialize, Serialize};

use crate::error::{FileError, GroupError, RingError};
use crate::ring::{FiniteRing, StructureTable};

pub const FORMAT_VERSION: u64 = 1;

/// On-disk form of a ring: additive factors and the generator table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDocument {
    pub version: u64,
    pub factors: Vec<u64>,
    pub table: Vec<Vec<Vec<u64>>>,
}

impl RingDocument {
    /// Canonical document: factors in invariant form, coordinates reduced.
    pub fn of(r: &FiniteRing) -> Self {
        RingDocument {
            version: FORMAT_VERSION,
            factors: r.group().factors().to_vec(),
            table: r.table().to_coords(),
        }
    }

    /// Re-validates and transports the table onto the canonical group.
    pub fn to_ring(&self) -> Result<FiniteRing, FileError> {
        if self.version != FORMAT_VERSION {
            return Err(FileError::Version(self.version));
        }
        for entry in self.table.iter().flatten() {
            for (index, (&value, &modulus)) in entry.iter().zip(&self.factors).enumerate() {
                if value >= modulus {
                    return Err(RingError::from(GroupError::UnreducedCoordinate {
                        index,
                        value,
                        modulus,
                    })
                    .into());
                }
            }
        }
        let table = StructureTable::from_coords(self.table.clone());
        Ok(FiniteRing::from_presentation(&self.factors, &table)?)
    }
}

/// Serializes a ring as a single JSON line.
pub fn ring_to_file(r: &FiniteRing) -> String {
    let mut s =
        serde_json::to_string(&RingDocument::of(r)).expect("ring documents always serialize");
    s.push('\n');
    s
}

pub fn ring_from_file(doc: &str) -> Result<FiniteRing, FileError> {
    let d: RingDocument = serde_json::from_str(doc).map_err(|e| FileError::Parse(e.to_string()))?;
    d.to_ring()
}

//! The numbered alcoves `A_1 … A_35` of the dominant chamber and their
//! transports `A_i^v = v·A_i`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::facette::{
    alcove_walls, chamber_of_signature, dot_signature, is_realizable, AlcoveId, Hyperplane,
    Signature,
};
use crate::lattice::PositiveRoot;
use crate::weyl::{Chamber, WeylElem};

/// The shipped label file.
pub const BUILTIN_LABELS: &str = include_str!("../data/labels.txt");

/// Pairs of numbered alcoves whose common wall is named somewhere; each must
/// be an adjacent pair.
pub const ADJACENT_PAIRS: [(u32, u32); 23] = [
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (5, 7),
    (6, 8),
    (8, 6),
    (8, 11),
    (11, 13),
    (13, 15),
    (14, 12),
    (10, 9),
    (10, 12),
    (11, 12),
    (18, 22),
    (20, 17),
    (22, 18),
    (22, 20),
    (22, 25),
    (23, 21),
    (23, 26),
    (24, 20),
    (24, 31),
];

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LabelError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("label {0}: floor vector is not an alcove")]
    NotRealizable(u32),
    #[error("label {0}: not in the dominant chamber after transport")]
    NotDominant(u32),
    #[error("labels {0} and {1} name the same alcove")]
    Duplicate(u32, u32),
    #[error("label {0} appears twice")]
    DuplicateIndex(u32),
    #[error("labels {0} and {1} should share a wall")]
    NotAdjacent(u32, u32),
    #[error("label {0} is missing")]
    Missing(u32),
    #[error("anchor failed: {0}")]
    Anchor(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelRecord {
    pub index: u32,
    pub alcove: AlcoveId,
    pub citation: String,
    pub low_confidence: bool,
}

/// An alcove named by a chamber element and a number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledAlcove {
    pub chamber: WeylElem,
    pub index: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelTable {
    records: BTreeMap<u32, LabelRecord>,
    by_sig: BTreeMap<Signature, u32>,
}

fn parse_vector(text: &str) -> Option<[i64; 6]> {
    let inner = text.strip_prefix('(')?.strip_suffix(')')?;
    let parts: Vec<i64> = inner
        .split(',')
        .map(|t| t.trim().parse().ok())
        .collect::<Option<_>>()?;
    parts.try_into().ok()
}

impl LabelTable {
    /// Parses and validates a label file.
    pub fn parse(text: &str) -> Result<LabelTable, LabelError> {
        let mut records = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| LabelError::Parse {
                line: no + 1,
                msg: msg.to_string(),
            };
            let mut fields = line.split_whitespace();
            let index: u32 = fields
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err("bad index"))?;
            let mut chamber = None;
            let mut n = None;
            let mut citation = String::new();
            let mut low = false;
            for f in fields {
                let (k, v) = f.split_once('=').ok_or_else(|| err("expected key=value"))?;
                match k {
                    "chamber" => {
                        chamber = Some(WeylElem::parse(v).ok_or_else(|| err("bad chamber"))?)
                    }
                    "n" => n = Some(parse_vector(v).ok_or_else(|| err("bad floor vector"))?),
                    "cite" => citation = v.to_string(),
                    "conf" => low = v == "low",
                    _ => return Err(err("unknown field")),
                }
            }
            let chamber = chamber.ok_or_else(|| err("missing chamber"))?;
            let n = n.ok_or_else(|| err("missing floor vector"))?;
            let sig = AlcoveId::new(n).signature();
            if !is_realizable(&sig) {
                return Err(LabelError::NotRealizable(index));
            }
            let dominant = dot_signature(chamber.inverse(), &sig);
            if chamber_of_signature(&dominant) != Chamber::Regular(WeylElem::E) {
                return Err(LabelError::NotDominant(index));
            }
            let rec = LabelRecord {
                index,
                alcove: AlcoveId::new(dominant.map(|k| (k - 1) / 2)),
                citation,
                low_confidence: low,
            };
            if records.insert(index, rec).is_some() {
                return Err(LabelError::DuplicateIndex(index));
            }
        }
        let mut by_sig = BTreeMap::new();
        for r in records.values() {
            if let Some(prev) = by_sig.insert(r.alcove.signature(), r.index) {
                return Err(LabelError::Duplicate(prev, r.index));
            }
        }
        let table = LabelTable { records, by_sig };
        table.validate()?;
        Ok(table)
    }

    pub fn builtin() -> LabelTable {
        LabelTable::parse(BUILTIN_LABELS).expect("shipped label file is valid")
    }

    fn validate(&self) -> Result<(), LabelError> {
        let a1 = self.records.get(&1).ok_or(LabelError::Missing(1))?;
        if a1.alcove != AlcoveId::A1 {
            return Err(LabelError::Anchor(
                "label 1 must contain the zero weight".into(),
            ));
        }
        if let Some(a2) = self.records.get(&2) {
            let up = alcove_walls(&a1.alcove.signature())
                .into_iter()
                .find(|w| w.root == PositiveRoot::TwoAlphaBeta && w.level == 1)
                .map(|w| w.neighbor);
            if up != Some(a2.alcove.signature()) {
                return Err(LabelError::Anchor(
                    "label 2 must be the reflection of label 1 in (2a+b, 1)".into(),
                ));
            }
        }
        for (i, j) in ADJACENT_PAIRS {
            let (Some(a), Some(b)) = (self.records.get(&i), self.records.get(&j)) else {
                continue;
            };
            if common_wall(&a.alcove.signature(), &b.alcove.signature()).is_none() {
                return Err(LabelError::NotAdjacent(i, j));
            }
        }
        Ok(())
    }

    pub fn get(&self, index: u32) -> Option<&LabelRecord> {
        self.records.get(&index)
    }

    pub fn records(&self) -> impl Iterator<Item = &LabelRecord> {
        self.records.values()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Signature of `A_i^v`.
    pub fn signature(&self, index: u32, chamber: WeylElem) -> Option<Signature> {
        let r = self.records.get(&index)?;
        Some(dot_signature(chamber, &r.alcove.signature()))
    }

    /// Chamber and number of an alcove, if it is a transport of a numbered one.
    pub fn label_of_signature(&self, sig: &Signature) -> Option<LabeledAlcove> {
        let v = chamber_of_signature(sig).elem()?;
        let dom = dot_signature(v.inverse(), sig);
        self.by_sig
            .get(&dom)
            .map(|&index| LabeledAlcove { chamber: v, index })
    }

    pub fn label_of(&self, a: &AlcoveId) -> Option<LabeledAlcove> {
        self.label_of_signature(&a.signature())
    }
}

/// The wall shared by two alcoves, if they are adjacent.
pub fn common_wall(a: &Signature, b: &Signature) -> Option<(Signature, Hyperplane)> {
    alcove_walls(a)
        .into_iter()
        .find(|w| w.neighbor == *b)
        .map(|w| {
            (
                w.wall,
                Hyperplane {
                    root: w.root,
                    level: w.level,
                },
            )
        })
}

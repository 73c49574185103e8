//! Status table: facette × degree → Zero / NonZero / Unknown, with provenance.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::facette::{FacetteIndex, FacetteKey, GeometryError, Window};
use crate::lattice::Weight;

/// Top cohomological degree (the flag variety has dimension 6).
pub const MAX_DEGREE: u8 = 6;
pub const DEGREES: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Unknown,
    Zero,
    NonZero,
}

impl Status {
    pub fn is_decided(self) -> bool {
        self != Status::Unknown
    }

    pub fn short(self) -> &'static str {
        match self {
            Status::Unknown => "?",
            Status::Zero => "Z",
            Status::NonZero => "NZ",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        match s {
            "Z" | "Zero" | "zero" => Some(Status::Zero),
            "NZ" | "NonZero" | "nonzero" => Some(Status::NonZero),
            "?" | "Unknown" | "unknown" => Some(Status::Unknown),
            _ => None,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Modular,
    Quantum,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Modular => "modular",
            Mode::Quantum => "quantum",
        }
    }
}

macro_rules! rules {
    ($($v:ident => $s:literal),* $(,)?) => {
        /// Inference rules. Every provenance names one of these.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum RuleId { $($v),* }

        impl RuleId {
            pub const ALL: &'static [RuleId] = &[$(RuleId::$v),*];

            pub fn name(self) -> &'static str {
                match self { $(RuleId::$v => $s),* }
            }

            pub fn parse(s: &str) -> Option<RuleId> {
                match s { $($s => Some(RuleId::$v),)* _ => None }
            }
        }
    };
}

rules! {
    Kempf => "R-KEMPF",
    H0 => "R-H0",
    Serre => "R-SERRE",
    BottLb => "R-BOTT-LB",
    P1 => "R-P1",
    F34 => "R-F34",
    SimpleSing => "R-SIMPLE-SING",
    Frob => "R-FROB",
    QFrob => "R-QFROB",
    ScaleNz => "R-SCALE-NZ",
    SpecialSing => "R-SPECIAL-SING",
    SpecialReg => "R-SPECIAL-REG",
    Closure => "R-CLOSURE",
    WallUpZ => "R-WALLUP-Z",
    WallNz => "R-WALL-NZ",
    SeqNz => "R-SEQ-NZ",
    ConeI => "R-CONE-I",
    ConeII => "R-CONE-II",
    ConeIII => "R-CONE-III",
    Uct => "R-UCT",
    ReflIso => "R-REFL-ISO",
    Ledger => "LEDGER",
}

impl RuleId {
    /// Seeding rules that need no premises.
    pub const LAYER_A: &'static [RuleId] = &[
        RuleId::H0,
        RuleId::Kempf,
        RuleId::BottLb,
        RuleId::P1,
        RuleId::F34,
        RuleId::SimpleSing,
    ];
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A cell of the table: a facette (by index) and a degree.
pub type CellId = u32;

/// Why a cell holds its status. Premises are cells decided before this fired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub rule: RuleId,
    pub premises: Arc<[CellId]>,
    pub citation: Option<Arc<str>>,
    /// Set when the conclusion lies outside the region where the rule is certified.
    pub advisory: bool,
}

impl Provenance {
    pub fn new(rule: RuleId) -> Self {
        Provenance {
            rule,
            premises: Arc::from(Vec::new()),
            citation: None,
            advisory: false,
        }
    }

    pub fn with_premises(rule: RuleId, premises: &[CellId]) -> Self {
        Provenance {
            rule,
            premises: Arc::from(premises),
            citation: None,
            advisory: false,
        }
    }

    pub fn cited(rule: RuleId, citation: &str) -> Self {
        Provenance {
            rule,
            premises: Arc::from(Vec::new()),
            citation: Some(Arc::from(citation)),
            advisory: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KbError {
    #[error("conflict at {key} degree {degree}: {old} by {old_rule} vs {new} by {new_rule}")]
    Conflict {
        key: FacetteKey,
        degree: u8,
        old: Status,
        new: Status,
        old_rule: RuleId,
        new_rule: RuleId,
        old_prov: Provenance,
        new_prov: Provenance,
    },
    #[error("weight {0} is outside the table window")]
    OutOfWindow(Weight),
    #[error("facette {0} is outside the table window")]
    KeyOutOfWindow(FacetteKey),
    #[error("degree {0} is outside 0..=6")]
    BadDegree(u8),
    #[error("cannot assert Unknown")]
    AssertUnknown,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("schema: {0}")]
    Schema(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Cell {
    status: Option<bool>,
    provenance: Vec<Provenance>,
    round: u32,
}

impl Cell {
    fn status(&self) -> Status {
        match self.status {
            None => Status::Unknown,
            Some(false) => Status::Zero,
            Some(true) => Status::NonZero,
        }
    }
}

/// The table over a fixed window.
#[derive(Clone, Debug)]
pub struct StatusTable {
    pub p: i64,
    pub mode: Mode,
    pub index: Arc<FacetteIndex>,
    cells: Vec<Cell>,
    log: Vec<CellId>,
    round: u32,
}

impl PartialEq for StatusTable {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.mode == other.mode
            && self.index.window == other.index.window
            && self.index.keys == other.index.keys
            && self.cells.len() == other.cells.len()
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(a, b)| a.status == b.status && a.provenance == b.provenance)
    }
}

impl StatusTable {
    pub fn new(p: i64, mode: Mode, window: Window) -> Self {
        Self::with_index(mode, Arc::new(FacetteIndex::build(p, window)))
    }

    pub fn with_index(mode: Mode, index: Arc<FacetteIndex>) -> Self {
        let n = index.len() * DEGREES;
        StatusTable {
            p: index.p,
            mode,
            index,
            cells: alloc::vec![Cell::default(); n],
            log: Vec::new(),
            round: 0,
        }
    }

    pub fn window(&self) -> Window {
        self.index.window
    }

    pub fn facette_count(&self) -> usize {
        self.index.len()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_id(facette: usize, degree: u8) -> CellId {
        (facette * DEGREES + degree as usize) as CellId
    }

    pub fn split(cell: CellId) -> (usize, u8) {
        let c = cell as usize;
        (c / DEGREES, (c % DEGREES) as u8)
    }

    pub fn key_of_cell(&self, cell: CellId) -> (FacetteKey, u8) {
        let (f, d) = Self::split(cell);
        (self.index.keys[f], d)
    }

    pub fn get(&self, cell: CellId) -> Status {
        self.cells[cell as usize].status()
    }

    /// Status at `(facette, degree)`; degrees above 6 read as Zero.
    pub fn at(&self, facette: usize, degree: i32) -> Status {
        if !(0..=MAX_DEGREE as i32).contains(&degree) {
            return Status::Zero;
        }
        self.get(Self::cell_id(facette, degree as u8))
    }

    pub fn provenance(&self, cell: CellId) -> &[Provenance] {
        &self.cells[cell as usize].provenance
    }

    /// Round in which the cell was decided (0 for undecided cells and seeds).
    pub fn decided_round(&self, cell: CellId) -> u32 {
        self.cells[cell as usize].round
    }

    pub(crate) fn set_round(&mut self, round: u32) {
        self.round = round;
    }

    /// Decision order of all cells so far.
    pub fn log(&self) -> &[CellId] {
        &self.log
    }

    fn facette_of_key(&self, key: &FacetteKey) -> Result<usize, KbError> {
        self.index
            .find_key(key)
            .ok_or(KbError::KeyOutOfWindow(*key))
    }

    pub fn status_by_key(&self, key: &FacetteKey, degree: u8) -> Result<Status, KbError> {
        if degree > MAX_DEGREE {
            return Ok(Status::Zero);
        }
        Ok(self.get(Self::cell_id(self.facette_of_key(key)?, degree)))
    }

    /// Status of the facette containing `λ`.
    pub fn status_of(&self, lambda: Weight, degree: u8) -> Result<Status, KbError> {
        if degree > MAX_DEGREE {
            return Ok(Status::Zero);
        }
        let f = self
            .index
            .find_weight(lambda)?
            .ok_or(KbError::OutOfWindow(lambda))?;
        Ok(self.get(Self::cell_id(f, degree)))
    }

    /// Records a status. Returns `true` if the cell was previously Unknown.
    pub fn assert_cell(
        &mut self,
        cell: CellId,
        status: Status,
        prov: Provenance,
    ) -> Result<bool, KbError> {
        let value = match status {
            Status::Zero => false,
            Status::NonZero => true,
            Status::Unknown => return Err(KbError::AssertUnknown),
        };
        let round = self.round;
        let c = &mut self.cells[cell as usize];
        match c.status {
            None => {
                c.status = Some(value);
                c.round = round;
                c.provenance.push(prov);
                self.log.push(cell);
                Ok(true)
            }
            Some(v) if v == value => {
                if !c.provenance.contains(&prov) {
                    c.provenance.push(prov);
                }
                Ok(false)
            }
            Some(_) => {
                let old_prov = c.provenance[0].clone();
                let old = c.status();
                let (key, degree) = self.key_of_cell(cell);
                Err(KbError::Conflict {
                    key,
                    degree,
                    old,
                    new: status,
                    old_rule: old_prov.rule,
                    new_rule: prov.rule,
                    old_prov,
                    new_prov: prov,
                })
            }
        }
    }

    /// Records a status for a facette key.
    pub fn assert_status(
        &mut self,
        key: &FacetteKey,
        degree: u8,
        status: Status,
        prov: Provenance,
    ) -> Result<bool, KbError> {
        if degree > MAX_DEGREE {
            return Err(KbError::BadDegree(degree));
        }
        let f = self.facette_of_key(key)?;
        self.assert_cell(Self::cell_id(f, degree), status, prov)
    }

    /// Premises of a provenance as facette keys.
    pub fn premise_keys(&self, prov: &Provenance) -> Vec<(FacetteKey, u8)> {
        prov.premises.iter().map(|c| self.key_of_cell(*c)).collect()
    }

    /// Converts keyed premises into cell ids of this table.
    pub fn cells_of(&self, premises: &[(FacetteKey, u8)]) -> Result<Vec<CellId>, KbError> {
        premises
            .iter()
            .map(|(k, d)| {
                if *d > MAX_DEGREE {
                    return Err(KbError::BadDegree(*d));
                }
                Ok(Self::cell_id(self.facette_of_key(k)?, *d))
            })
            .collect()
    }

    /// Rebuilds a table keeping only the first `n` decisions of the log.
    pub fn replay_prefix(&self, n: usize) -> StatusTable {
        let mut t = StatusTable::with_index(self.mode, self.index.clone());
        for &cell in &self.log[..n.min(self.log.len())] {
            let src = &self.cells[cell as usize];
            let dst = &mut t.cells[cell as usize];
            dst.status = src.status;
            dst.round = src.round;
            dst.provenance.push(src.provenance[0].clone());
            t.log.push(cell);
        }
        t
    }

    /// Every cell with its status, in canonical (key, degree) order.
    pub fn iter_cells(&self) -> impl Iterator<Item = (CellId, Status)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, c)| (i as CellId, c.status()))
    }

    pub fn unknown_count(&self) -> usize {
        self.cells.iter().filter(|c| c.status.is_none()).count()
    }

    /// Restores a cell from serialized form (no conflict semantics). Decided
    /// cells join the log in call order, so restore them by `(round, cell)`.
    pub fn restore_cell(
        &mut self,
        cell: CellId,
        status: Status,
        round: u32,
        provenance: Vec<Provenance>,
    ) -> Result<(), KbError> {
        let Some(c) = self.cells.get_mut(cell as usize) else {
            return Err(KbError::Schema(alloc::format!(
                "cell {cell} is outside the table"
            )));
        };
        if c.status.is_some() {
            return Err(KbError::Schema(alloc::format!("cell {cell} listed twice")));
        }
        c.status = match status {
            Status::Unknown => None,
            Status::Zero => Some(false),
            Status::NonZero => Some(true),
        };
        if c.status.is_some() {
            self.log.push(cell);
        }
        c.round = round;
        c.provenance = provenance;
        Ok(())
    }

    /// Sub-table check: every decided cell of `self` is decided equally in `other`.
    pub fn is_subtable_of(&self, other: &StatusTable) -> bool {
        self.index.keys == other.index.keys
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(a, b)| a.status.is_none() || a.status == b.status)
    }
}

//! The root-of-unity analogue: the same inference with `l` in place of `p`,
//! where the Frobenius quotient is characteristic zero.

use alloc::vec::Vec;

use crate::engine::{Engine, EngineError, RuleSet, SaturateOptions};
use crate::facette::{signature_of, Window};
use crate::kb::{Mode, Status, StatusTable, DEGREES};
use crate::labels::LabelTable;
use crate::lattice::{pairing_vector, Weight, RHO};
use crate::ledger::{Ledger, LedgerError};
use crate::report::{unknown_cells_in, UnknownCell};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QuantumError {
    #[error("order {0} needs l > 5 and gcd(l, 6) = 1")]
    BadOrder(i64),
    #[error("{} cells left undecided", .0.len())]
    IncompleteWindow(Vec<UnknownCell>),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Order `l` of the root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantumConfig {
    l: i64,
}

impl QuantumConfig {
    pub fn new(l: i64) -> Result<Self, QuantumError> {
        if l > 5 && l % 2 != 0 && l % 3 != 0 {
            Ok(QuantumConfig { l })
        } else {
            Err(QuantumError::BadOrder(l))
        }
    }

    pub fn l(self) -> i64 {
        self.l
    }
}

fn saturate(
    cfg: QuantumConfig,
    window: Window,
    ledger: &Ledger,
    labels: &LabelTable,
) -> Result<StatusTable, QuantumError> {
    let mut e = Engine::new(StatusTable::new(cfg.l, Mode::Quantum, window), labels);
    e.set_ledger(&ledger.facts(labels, cfg.l)?)?;
    e.saturate(RuleSet::all(), &SaturateOptions::default())?;
    Ok(e.table)
}

/// Rings of alcoves saturated beyond the requested window. Cells within a
/// few rings of the edge lack the neighbours their derivations need.
pub const MARGIN: i64 = 4;

/// Saturates `window` plus [`MARGIN`] rings and insists every cell of
/// `window` is decided. The returned table covers the enlarged window.
pub fn quantum_table(
    cfg: QuantumConfig,
    window: Window,
    ledger: &Ledger,
    labels: &LabelTable,
) -> Result<StatusTable, QuantumError> {
    let padded = match window {
        Window::Region { bound, chamber } => Window::Region {
            bound: bound + MARGIN,
            chamber,
        },
        Window::Empty => Window::Empty,
    };
    let table = saturate(cfg, padded, ledger, labels)?;
    let open = unknown_cells_in(&table, labels, &window);
    if open.is_empty() {
        Ok(table)
    } else {
        Err(QuantumError::IncompleteWindow(open))
    }
}

/// `H^•(λ)` for the quantum group, from a ball around `0` reaching past `λ`.
/// The ball is doubled a few times while a degree stays open; degrees still
/// open after that (or a ledger that fails to load) stay `Unknown`.
pub fn quantum_profile(
    lambda: Weight,
    cfg: QuantumConfig,
    ledger: &Ledger,
    labels: &LabelTable,
) -> [Status; DEGREES] {
    let mut out = [Status::Unknown; DEGREES];
    let Ok(sig) = signature_of(lambda, cfg.l) else {
        return out;
    };
    let reach = pairing_vector(lambda + RHO)
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or(0);
    let mut bound = (reach / cfg.l + 1).max(cfg.l) + MARGIN;
    for _ in 0..3 {
        let Ok(table) = saturate(cfg, Window::ball(bound), ledger, labels) else {
            return out;
        };
        if let Some(f) = table.index.find_sig(&sig) {
            for (d, s) in out.iter_mut().enumerate() {
                *s = table.get(StatusTable::cell_id(f, d as u8));
            }
        }
        if out.iter().all(|s| s.is_decided()) {
            break;
        }
        bound *= 2;
    }
    out
}

/// One degree of [`quantum_profile`]; degrees past 6 give `Unknown`.
pub fn quantum_status(
    lambda: Weight,
    degree: u8,
    cfg: QuantumConfig,
    ledger: &Ledger,
    labels: &LabelTable,
) -> Status {
    if degree as usize >= DEGREES {
        return Status::Unknown;
    }
    quantum_profile(lambda, cfg, ledger, labels)[degree as usize]
}

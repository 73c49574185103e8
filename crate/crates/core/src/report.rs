//! Running a ledger to the fixpoint and reading the result: unknown cells,
//! derivation trees and picture diffs.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::engine::{Engine, EngineError, RuleSet, SaturateOptions};
use crate::facette::{FacetteKey, Signature, Window};
use crate::kb::{CellId, KbError, Mode, Status, StatusTable, DEGREES};
use crate::labels::{LabelTable, LabeledAlcove};
use crate::lattice::Weight;
use crate::ledger::{Ledger, LedgerError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Ledger(#[from] LedgerError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Saturates `P̄_2` (plus two rings of alcoves) at `p` with the given ledger.
pub fn solve(p: i64, ledger: &Ledger, labels: &LabelTable) -> Result<StatusTable, SolveError> {
    let table = StatusTable::new(p, Mode::Modular, Window::p2_plus(p, 2));
    let mut e = Engine::new(table, labels);
    e.set_ledger(&ledger.facts(labels, p)?)?;
    e.saturate(RuleSet::all(), &SaturateOptions::default())?;
    Ok(e.table)
}

fn label_text(l: LabeledAlcove) -> String {
    format!("A_{}^{}", l.index, l.chamber)
}

/// Human name of a facette: `A_i^v`, `F^v_{i/j}`, `F_{A_i^u/A_j^v}`, or its key.
pub fn describe(sig: &Signature, p: i64, labels: &LabelTable) -> String {
    let key = FacetteKey::from_signature(sig, p);
    match key {
        FacetteKey::Alcove(_) => labels.label_of_signature(sig).map(label_text),
        FacetteKey::Wall(w) => {
            let lo = labels.label_of(&w.lower);
            let hi = labels.label_of(&w.upper);
            match (lo, hi) {
                (Some(a), Some(b)) if a.chamber == b.chamber => {
                    let (i, j) = (a.index.min(b.index), a.index.max(b.index));
                    Some(format!("F^{}_{{{i}/{j}}}", a.chamber))
                }
                (Some(a), Some(b)) => Some(format!("F_{{{}/{}}}", label_text(a), label_text(b))),
                _ => None,
            }
        }
        FacetteKey::SpecialPoint(_) => None,
    }
    .unwrap_or_else(|| format!("{key}"))
}

/// A cell left undecided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownCell {
    pub facette: FacetteKey,
    pub name: String,
    pub degree: u8,
}

/// Undecided cells of the certified region: `P̄_2` in modular mode, the
/// whole window in quantum mode.
pub fn completeness_report(table: &StatusTable, labels: &LabelTable) -> Vec<UnknownCell> {
    let region = match table.mode {
        Mode::Modular => Window::ball(table.p),
        Mode::Quantum => table.index.window,
    };
    unknown_cells_in(table, labels, &region)
}

/// Undecided cells of the table whose facette lies in `region`.
pub fn unknown_cells_in(
    table: &StatusTable,
    labels: &LabelTable,
    region: &Window,
) -> Vec<UnknownCell> {
    let mut out = Vec::new();
    for (f, sig) in table.index.sigs.iter().enumerate() {
        if !region.contains(sig) {
            continue;
        }
        for d in 0..DEGREES as u8 {
            if table.get(StatusTable::cell_id(f, d)) == Status::Unknown {
                out.push(UnknownCell {
                    facette: table.index.keys[f],
                    name: describe(sig, table.p, labels),
                    degree: d,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExplainError {
    #[error("H^{degree} at {facette} is undecided")]
    UndecidedCell { facette: FacetteKey, degree: u8 },
    #[error(transparent)]
    Kb(#[from] KbError),
}

/// Derivation tree of `H^degree(λ)` as indented text, one node per line.
/// A cell already expanded higher up is printed once more without children.
pub fn explain(
    table: &StatusTable,
    labels: &LabelTable,
    lambda: Weight,
    degree: u8,
) -> Result<String, ExplainError> {
    if degree as usize >= DEGREES {
        return Err(KbError::BadDegree(degree).into());
    }
    let f = table
        .index
        .find_weight(lambda)
        .map_err(KbError::from)?
        .ok_or(KbError::OutOfWindow(lambda))?;
    explain_cell(table, labels, StatusTable::cell_id(f, degree))
}

pub fn explain_cell(
    table: &StatusTable,
    labels: &LabelTable,
    cell: CellId,
) -> Result<String, ExplainError> {
    let (f, d) = StatusTable::split(cell);
    if !table.get(cell).is_decided() {
        return Err(ExplainError::UndecidedCell {
            facette: table.index.keys[f],
            degree: d,
        });
    }
    let mut out = String::new();
    let mut seen = BTreeSet::new();
    let mut stack = alloc::vec![(cell, 0usize)];
    while let Some((c, depth)) = stack.pop() {
        let (f, d) = StatusTable::split(c);
        let name = describe(&table.index.sigs[f], table.p, labels);
        let _ = write!(
            out,
            "{:indent$}H^{d}({name}) = {}",
            "",
            table.get(c),
            indent = 2 * depth
        );
        let Some(prov) = table.provenance(c).first() else {
            out.push_str("  [undecided]\n");
            continue;
        };
        let _ = write!(out, "  by {}", prov.rule.name());
        if let Some(cite) = &prov.citation {
            let _ = write!(out, " \"{cite}\"");
        }
        if prov.advisory {
            out.push_str(" (advisory)");
        }
        if !seen.insert(c) {
            out.push_str(" (see above)\n");
            continue;
        }
        out.push('\n');
        for p in prov.premises.iter().rev() {
            stack.push((*p, depth + 1));
        }
    }
    Ok(out)
}

/// Cells with a derivation free of advisory steps, by cell id.
///
/// Premises are always decided in an earlier round, so one pass in decision
/// order settles every cell.
pub fn certified_cells(table: &StatusTable) -> Vec<bool> {
    let mut ok = alloc::vec![false; table.cell_count()];
    for &c in table.log() {
        ok[c as usize] = table
            .provenance(c)
            .iter()
            .any(|p| !p.advisory && p.premises.iter().all(|q| ok[*q as usize]));
    }
    ok
}

/// A picture cell that disagrees with the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureMismatch {
    pub figure: String,
    pub facette: FacetteKey,
    pub name: String,
    pub degree: u8,
    pub expected: Status,
    pub found: Status,
}

impl fmt::Display for FigureMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: H^{}({}) {} expected {}, engine {}",
            self.figure, self.degree, self.name, self.facette, self.expected, self.found
        )
    }
}

/// Per picture, the cells it shows that the table decides differently (or
/// leaves open). Cells outside the table's `P̄_2` are skipped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FigureReport {
    pub figures: Vec<(String, usize, Vec<FigureMismatch>)>,
}

impl FigureReport {
    pub fn is_clean(&self) -> bool {
        self.figures.iter().all(|(_, _, m)| m.is_empty())
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &FigureMismatch> {
        self.figures.iter().flat_map(|(_, _, m)| m.iter())
    }
}

impl fmt::Display for FigureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, checked, m) in &self.figures {
            writeln!(f, "{name}: {checked} cells, {} mismatches", m.len())?;
            for x in m {
                writeln!(f, "  {x}")?;
            }
        }
        Ok(())
    }
}

pub fn validate_figures(
    ledger: &Ledger,
    labels: &LabelTable,
    table: &StatusTable,
) -> Result<FigureReport, LedgerError> {
    let mut report = FigureReport::default();
    for w in &ledger.windows {
        let mut checked = 0;
        let mut bad = Vec::new();
        for c in ledger.figure_cells(&w.name, labels, table.p)? {
            let Some(f) = table.index.find_sig(&c.sig) else {
                continue;
            };
            checked += 1;
            let found = table.get(StatusTable::cell_id(f, c.degree));
            if found != c.status {
                bad.push(FigureMismatch {
                    figure: w.name.clone(),
                    facette: table.index.keys[f],
                    name: describe(&c.sig, table.p, labels),
                    degree: c.degree,
                    expected: c.status,
                    found,
                });
            }
        }
        report.figures.push((w.name.clone(), checked, bad));
    }
    Ok(report)
}

#![allow(dead_code)]

use std::sync::OnceLock;

use g2coh_core::engine::{Engine, RuleSet, SaturateOptions};
use g2coh_core::facette::Signature;
use g2coh_core::kb::{Mode, Status, StatusTable};
use g2coh_core::labels::LabelTable;
use g2coh_core::ledger::{Ledger, Level, Selector};
use g2coh_core::report::solve;
use g2coh_core::Window;

pub fn labels() -> &'static LabelTable {
    static L: OnceLock<LabelTable> = OnceLock::new();
    L.get_or_init(LabelTable::builtin)
}

pub fn ledger() -> &'static Ledger {
    static L: OnceLock<Ledger> = OnceLock::new();
    L.get_or_init(|| Ledger::builtin(Level::L2, labels()))
}

/// The L2 table at `p = 7`, shared by the tests of one binary.
pub fn table7() -> &'static StatusTable {
    static T: OnceLock<StatusTable> = OnceLock::new();
    T.get_or_init(|| solve(7, ledger(), labels()).unwrap())
}

/// Saturation with rules only.
pub fn rules_only(p: i64) -> StatusTable {
    let mut e = Engine::new(
        StatusTable::new(p, Mode::Modular, Window::p2_plus(p, 2)),
        labels(),
    );
    e.saturate(RuleSet::all(), &SaturateOptions::default())
        .unwrap();
    e.table
}

pub fn sel(name: &str) -> Signature {
    Selector::parse(name).unwrap().resolve(labels(), 7).unwrap()
}

pub fn at(t: &StatusTable, sig: &Signature, d: u8) -> Status {
    let f = t
        .index
        .find_sig(sig)
        .unwrap_or_else(|| panic!("{sig:?} not in window"));
    t.get(StatusTable::cell_id(f, d))
}

pub fn named(t: &StatusTable, name: &str, d: u8) -> Status {
    at(t, &sel(name), d)
}

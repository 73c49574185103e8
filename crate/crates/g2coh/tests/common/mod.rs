#![allow(dead_code)]

use std::sync::OnceLock;

use g2coh_core::kb::StatusTable;
use g2coh_core::labels::LabelTable;
use g2coh_core::ledger::{Ledger, Level};
use g2coh_core::report::solve;

pub fn labels() -> &'static LabelTable {
    static L: OnceLock<LabelTable> = OnceLock::new();
    L.get_or_init(LabelTable::builtin)
}

pub fn ledger() -> &'static Ledger {
    static L: OnceLock<Ledger> = OnceLock::new();
    L.get_or_init(|| Ledger::builtin(Level::L2, labels()))
}

pub fn table(p: i64) -> &'static StatusTable {
    static T7: OnceLock<StatusTable> = OnceLock::new();
    static T17: OnceLock<StatusTable> = OnceLock::new();
    let cell = match p {
        7 => &T7,
        17 => &T17,
        _ => panic!("no cached table at {p}"),
    };
    cell.get_or_init(|| solve(p, ledger(), labels()).unwrap())
}

/// Compares `actual` with the file in tests/golden, or rewrites the file when
/// G2COH_BLESS is set.
pub fn golden(name: &str, actual: &str) {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("G2COH_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(
        expected == actual,
        "{name} differs from the golden copy; rerun with G2COH_BLESS=1 if intended"
    );
}

mod common;

use common::*;
use g2coh_core::kb::{KbError, Status, StatusTable};
use g2coh_core::report::{certified_cells, completeness_report, describe, explain, ExplainError};
use g2coh_core::Weight;

#[test]
fn explain_h0_of_zero() {
    let s = explain(table7(), labels(), Weight::ZERO, 0).unwrap();
    assert_eq!(s.lines().count(), 1, "{s}");
    assert!(s.starts_with("H^0(A_1^e) = NZ  by R-H0"), "{s}");
}

#[test]
fn explain_a3w_by_sequence() {
    let t = rules_only(7);
    let f = t.index.find_sig(&sel("A_3^w")).unwrap();
    let s = explain(&t, labels(), t.index.reps[f], 4).unwrap();
    let lines: Vec<&str> = s.lines().collect();
    assert!(lines[0].starts_with("H^4(A_3^w) = NZ  by R-SEQ-NZ"), "{s}");
    assert!(
        lines.iter().any(|l| l.starts_with("  H^5(A_4^w) = NZ")),
        "{s}"
    );
}

#[test]
fn explain_refuses_open_cells() {
    let t = rules_only(7);
    let f = t.index.find_sig(&sel("A_18^s")).unwrap();
    assert_eq!(t.get(StatusTable::cell_id(f, 2)), Status::Unknown);
    let e = explain(&t, labels(), t.index.reps[f], 2).unwrap_err();
    assert_eq!(
        e,
        ExplainError::UndecidedCell {
            facette: t.index.keys[f],
            degree: 2
        }
    );
    assert!(matches!(
        explain(&t, labels(), Weight::ZERO, 7),
        Err(ExplainError::Kb(KbError::BadDegree(7)))
    ));
}

#[test]
fn every_tree_is_finite_and_decided() {
    let t = table7();
    for (f, _) in t.index.sigs.iter().enumerate().step_by(37) {
        for d in 0..7u8 {
            let s = explain(t, labels(), t.index.reps[f], d).unwrap();
            assert!(!s.contains("[undecided]"));
        }
    }
}

#[test]
fn p2_is_certified() {
    let t = table7();
    let ok = certified_cells(t);
    assert!(completeness_report(t, labels()).is_empty());
    for (f, sig) in t.index.sigs.iter().enumerate() {
        if g2coh_core::facette::sig_in_closed_ball(sig, 7) {
            for d in 0..7u8 {
                assert!(
                    ok[StatusTable::cell_id(f, d) as usize],
                    "{}",
                    describe(sig, 7, labels())
                );
            }
        }
    }
}

#[test]
fn names() {
    assert_eq!(describe(&sel("F^w_{4/3}"), 7, labels()), "F^w_{3/4}");
    assert_eq!(describe(&sel("A_18^s"), 7, labels()), "A_18^s");
    assert_eq!(
        describe(&sel("F_{A_3^w/A_3^{tz}}"), 7, labels()),
        "F_{A_3^tz/A_3^w}"
    );
}

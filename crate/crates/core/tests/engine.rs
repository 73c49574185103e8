mod common;

use common::*;
use g2coh_core::engine::{bott_profile, seed, Engine, RuleSet, SaturateOptions};
use g2coh_core::facette::{
    dot_signature, in_pn, kind_of, sig_in_closed_ball, signature_of, FacetteKind,
};
use g2coh_core::kb::{Mode, RuleId, Status, StatusTable};
use g2coh_core::lattice::PositiveRoot;
use g2coh_core::report::{completeness_report, solve};
use g2coh_core::weyl::chamber_of_shifted;
use g2coh_core::{Chamber, Weight, WeylElem, Window, RHO};

fn profile(t: &StatusTable, sig: &[i64; 6]) -> Vec<Status> {
    (0..7).map(|d| at(t, sig, d)).collect()
}

fn only(d: usize) -> Vec<Status> {
    (0..7)
        .map(|i| {
            if i == d {
                Status::NonZero
            } else {
                Status::Zero
            }
        })
        .collect()
}

#[test]
fn seeding_examples() {
    let t = seed(7, Mode::Modular, Window::p2_plus(7, 2), labels()).unwrap();
    assert_eq!(profile(&t, &sel("A_1")), only(0));
    assert_eq!(profile(&t, &sel("F^x_{3/4}")), only(2));
    // On an α-wall of level 0 every degree vanishes.
    for b in [-7, -1, 0, 3, 12] {
        let sig = signature_of(Weight::new(-1, b), 7).unwrap();
        assert_eq!(profile(&t, &sig), vec![Status::Zero; 7], "b={b}");
    }
}

#[test]
fn saturation_examples() {
    let t = table7();
    assert_eq!(named(t, "F^w_{3/4}", 4), Status::Zero);
    assert_eq!(named(t, "A_7^w", 4), Status::Zero);
    assert_eq!(named(t, "A_8^w", 4), Status::NonZero);
    assert_eq!(named(t, "A_3^w", 4), Status::NonZero);
    assert_eq!(named(t, "A_1^w", 4), Status::Zero);
}

#[test]
fn a3w_from_rules_alone() {
    let t = rules_only(7);
    let a3 = sel("A_3^w");
    assert_eq!(at(&t, &a3, 4), Status::NonZero);
    let f = t.index.find_sig(&a3).unwrap();
    let prov = t.provenance(StatusTable::cell_id(f, 4));
    assert!(prov.iter().any(|p| p.rule == RuleId::SeqNz), "{prov:?}");
}

#[test]
fn redundant_entry_changes_nothing() {
    let mut l = ledger().clone();
    l.entries.retain(|e| e.id != "w4-3");
    let t = solve(7, &l, labels()).unwrap();
    let full = table7();
    assert!(t.iter_cells().all(|(c, s)| full.get(c) == s));
}

#[test]
fn completeness_by_level() {
    assert!(completeness_report(table7(), labels()).is_empty());
    let bare = rules_only(7);
    let open = completeness_report(&bare, labels());
    assert!(!open.is_empty());
    let a18 = bare.index.find_sig(&sel("A_18^s")).unwrap();
    assert!(open
        .iter()
        .any(|u| u.facette == bare.index.keys[a18] && u.degree == 2));
    assert!(open.iter().all(|u| u.degree != 0 && u.degree != 6));
}

#[test]
fn order_independent() {
    let facts = ledger().facts(labels(), 7).unwrap();
    let run = |order: Option<Vec<usize>>| {
        let mut e = Engine::new(
            StatusTable::new(7, Mode::Modular, Window::p2_plus(7, 2)),
            labels(),
        );
        e.set_ledger(&facts).unwrap();
        let opts = SaturateOptions {
            facette_order: order,
            max_rounds: None,
        };
        e.saturate(RuleSet::all(), &opts).unwrap();
        e.table
    };
    let a = run(None);
    let n = a.facette_count();
    // A fixed scramble: multiplication by a unit modulo n.
    let step = (2..n).find(|k| gcd(*k, n) == 1 && *k > n / 3).unwrap();
    let b = run(Some((0..n).map(|i| i * step % n).collect()));
    let c = run(Some((0..n).rev().collect()));
    for other in [&b, &c] {
        for (cell, s) in a.iter_cells() {
            assert_eq!(other.get(cell), s);
            assert_eq!(other.provenance(cell), a.provenance(cell));
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn soundness_cross_checks() {
    let t = table7();
    let p = 7;
    for (f, sig) in t.index.sigs.iter().enumerate() {
        let rep = t.index.reps[f];
        let u = rep + RHO;
        // Serre.
        if let Some(g) = t.index.find_sig(&sig.map(|k| -k)) {
            for d in 0..7u8 {
                assert_eq!(
                    t.get(StatusTable::cell_id(f, d)),
                    t.get(StatusTable::cell_id(g, 6 - d))
                );
            }
        }
        // Bott lower bound and the characteristic-0 profile on P_1.
        if let Chamber::Regular(v) = chamber_of_shifted(u) {
            assert_eq!(
                t.get(StatusTable::cell_id(f, v.length() as u8)),
                Status::NonZero,
                "{rep}"
            );
        }
        if in_pn(rep, p, 1) {
            assert_eq!(
                profile(t, sig).as_slice(),
                &bott_profile(chamber_of_shifted(u))[..],
                "{rep}"
            );
        }
        // Frobenius: the special point p·λ carries the statuses of λ.
        if kind_of(sig) == FacetteKind::SpecialPoint {
            let lambda = Weight::new(sig[0] / 2, sig[1] / 2) - RHO;
            if let Some(g) = signature_of(lambda, p)
                .ok()
                .and_then(|s| t.index.find_sig(&s))
            {
                for d in 0..7u8 {
                    assert_eq!(
                        t.get(StatusTable::cell_id(f, d)),
                        t.get(StatusTable::cell_id(g, d)),
                        "{lambda}"
                    );
                }
            }
        }
    }
}

/// `0 < ⟨λ+ρ, γ∨⟩ = s·pᵐ` with `s < p`, read off a signature entry.
fn reflection_applies(k: i64, p: i64) -> bool {
    if k == 1 {
        return true;
    }
    if k <= 0 || k % 2 != 0 {
        return false;
    }
    let mut x = k / 2;
    while x % p == 0 {
        x /= p;
    }
    x < p
}

#[test]
fn reflection_links_agree() {
    let t = table7();
    let mut links = 0;
    for (f, sig) in t.index.sigs.iter().enumerate() {
        for (g, s) in [
            (PositiveRoot::Alpha, WeylElem::S),
            (PositiveRoot::Beta, WeylElem::T),
        ] {
            if !reflection_applies(sig[g.index()], 7) {
                continue;
            }
            let Some(h) = t.index.find_sig(&dot_signature(s, sig)) else {
                continue;
            };
            links += 1;
            for d in 0..6u8 {
                assert_eq!(
                    t.get(StatusTable::cell_id(h, d + 1)),
                    t.get(StatusTable::cell_id(f, d))
                );
            }
        }
    }
    assert!(links > 500, "{links}");
}

#[test]
fn dominant_rows_are_kempf() {
    let t = table7();
    for sig in &t.index.sigs {
        if sig[0] >= 1 && sig[1] >= 1 && sig_in_closed_ball(sig, 7) {
            assert_eq!(profile(t, sig), only(0));
        }
    }
}

#[test]
fn lookups_after_seeding() {
    let t = seed(7, Mode::Modular, Window::p2_plus(7, 2), labels()).unwrap();
    assert_eq!(t.status_of(Weight::ZERO, 0).unwrap(), Status::NonZero);
    assert_eq!(t.status_of(Weight::ZERO, 3).unwrap(), Status::Zero);
    assert_eq!(t.status_of(Weight::new(-1, -1), 0).unwrap(), Status::Zero);
}

#[test]
fn log_prefixes_are_subtables() {
    let t = table7();
    let n = t.log().len();
    for k in [0, 1, n / 3, n / 2, n] {
        assert!(t.replay_prefix(k).is_subtable_of(t));
    }
}

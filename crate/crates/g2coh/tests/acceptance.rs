//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use g2coh::render::{decorations, render, Format, RenderSpec};
use g2coh_core::beyond::{box_centres, failure_window, find_failures, predict57, BoxWitness};
use g2coh_core::engine::bott_profile;
use g2coh_core::facette::{
    alcove_walls, box_member, classify, in_pn, is_above_within, kind_of, sig_in_closed_ball,
    signature_of, AlcoveId, FacetteKey, FacetteKind, Signature,
};
use g2coh_core::kb::{Status, StatusTable, DEGREES};
use g2coh_core::labels::LabelTable;
use g2coh_core::ledger::{Ledger, LedgerEntry, Level, Selector};
use g2coh_core::quantum::{quantum_table, QuantumConfig};
use g2coh_core::report::{certified_cells, completeness_report, describe, solve, validate_figures};
use g2coh_core::weyl::chamber_of_shifted;
use g2coh_core::{Chamber, Weight, Window, RHO};

type Verdict = Result<String, String>;

struct Ctx {
    labels: LabelTable,
    ledger: Ledger,
    /// Tables at 7, 11, 13 with their saturation times.
    small: Vec<(i64, StatusTable, Duration)>,
    t17: StatusTable,
    t19: StatusTable,
}

impl Ctx {
    fn table(&self, p: i64) -> &StatusTable {
        match p {
            17 => &self.t17,
            19 => &self.t19,
            _ => &self.small.iter().find(|x| x.0 == p).expect("cached p").1,
        }
    }
}

fn sel(ctx: &Ctx, name: &str) -> Signature {
    Selector::parse(name)
        .unwrap()
        .resolve(&ctx.labels, 17)
        .unwrap()
}

fn status(t: &StatusTable, sig: &Signature, d: u8) -> Status {
    t.index
        .find_sig(sig)
        .map_or(Status::Unknown, |f| t.get(StatusTable::cell_id(f, d)))
}

fn completeness(ctx: &Ctx) -> Verdict {
    let mut notes = Vec::new();
    let mut bad = Vec::new();
    for (p, t, took) in &ctx.small {
        let open = completeness_report(t, &ctx.labels);
        notes.push(format!(
            "p={p} {} open in {:.1}s",
            open.len(),
            took.as_secs_f64()
        ));
        if !open.is_empty() || *took > Duration::from_secs(300) {
            bad.push(*p);
        }
    }
    if bad.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(notes.join(", "))
    }
}

/// Every decided cell of `t` on a sparse grid of facettes, as ledger records.
fn redundant_entries(t: &StatusTable) -> Vec<LedgerEntry> {
    let mut out = Vec::new();
    for (f, sig) in t.index.sigs.iter().enumerate() {
        if f % 3 != 0 || !sig_in_closed_ball(sig, t.p) {
            continue;
        }
        for d in 1..6u8 {
            let s = t.get(StatusTable::cell_id(f, d));
            out.push(LedgerEntry {
                id: format!("redundant.{f}.{d}"),
                selector_text: format!("facette{sig:?}"),
                selector: Selector::Sig(*sig),
                degree: d,
                status: s,
                level: Level::L2,
                citation: "derived".into(),
                figure: None,
            });
        }
    }
    out
}

fn consistency(ctx: &Ctx) -> Verdict {
    let mut notes = Vec::new();
    for (p, t, _) in &ctx.small {
        let mut ledger = ctx.ledger.clone();
        let extra = redundant_entries(t);
        let n = extra.len();
        ledger.entries.extend(extra);
        let again = solve(*p, &ledger, &ctx.labels)
            .map_err(|e| format!("p={p} with {n} redundant records: {e}"))?;
        if let Some((c, _)) = t.iter_cells().find(|(c, s)| again.get(*c) != *s) {
            return Err(format!("p={p}: redundant records changed cell {c}"));
        }
        notes.push(format!("p={p} +{n} records"));
    }
    let withheld = ctx.ledger.withheld().count();
    Ok(format!(
        "no conflicts ({}); {withheld} contested records withheld",
        notes.join(", ")
    ))
}

fn serre(ctx: &Ctx) -> Verdict {
    let mut cells = 0usize;
    for p in [7, 11, 13, 17, 19] {
        let t = ctx.table(p);
        for (f, sig) in t.index.sigs.iter().enumerate() {
            let Some(g) = t.index.find_sig(&sig.map(|k| -k)) else {
                continue;
            };
            for d in 0..DEGREES as u8 {
                cells += 1;
                let (a, b) = (
                    t.get(StatusTable::cell_id(f, d)),
                    t.get(StatusTable::cell_id(g, 6 - d)),
                );
                if a != b {
                    return Err(format!(
                        "p={p} {} H^{d}={a} but dual H^{}={b}",
                        t.index.keys[f],
                        6 - d
                    ));
                }
            }
        }
    }
    Ok(format!("{cells} cells"))
}

const BATTERY: &[(&str, u8, Status)] = &[
    ("F^w_{3/4}", 4, Status::Zero),
    ("A_7^w", 4, Status::Zero),
    ("A_8^w", 4, Status::NonZero),
    ("A_3^w", 4, Status::NonZero),
    ("A_4^w", 4, Status::NonZero),
    ("A_5^w", 4, Status::NonZero),
    ("A_6^w", 4, Status::NonZero),
    ("F^z_{11/13}", 4, Status::Zero),
    ("F^z_{14/12}", 4, Status::Zero),
    ("F^z_{10/12}", 4, Status::Zero),
    ("F^z_{11/12}", 4, Status::Zero),
    ("A_7^y", 3, Status::NonZero),
    ("A_8^y", 3, Status::Zero),
    ("F^y_{22/18}", 3, Status::Zero),
    ("F^y_{20/17}", 3, Status::Zero),
    ("A_22^x", 3, Status::NonZero),
    ("A_25^x", 3, Status::Zero),
    ("A_18^s", 2, Status::NonZero),
    ("A_33^s", 2, Status::NonZero),
    ("A_34^s", 2, Status::Zero),
];

fn battery(ctx: &Ctx) -> Verdict {
    let mut wrong = Vec::new();
    for p in [17, 19] {
        let t = ctx.table(p);
        for &(name, d, want) in BATTERY {
            let got = status(t, &sel(ctx, name), d);
            if got != want {
                wrong.push(format!("p={p} H^{d}({name}) = {got}, expected {want}"));
            }
        }
    }
    if wrong.is_empty() {
        Ok(format!("{} facts at p=17 and p=19", BATTERY.len()))
    } else {
        Err(wrong.join("; "))
    }
}

/// Extras degrees of every facette with a label-based name.
fn named_extras(ctx: &Ctx, t: &StatusTable) -> BTreeMap<String, Vec<u8>> {
    let spec = RenderSpec::new(1..=5, Format::Text);
    let mut out = BTreeMap::new();
    for d in decorations(t, &ctx.labels, &spec) {
        if d.name.starts_with('A') || d.name.starts_with('F') {
            out.insert(d.name, d.degrees);
        }
    }
    out
}

fn stability(ctx: &Ctx) -> Verdict {
    let a = named_extras(ctx, &ctx.t17);
    let b = named_extras(ctx, &ctx.t19);
    if a == b {
        return Ok(format!(
            "{} labelled facettes decorated identically",
            a.len()
        ));
    }
    let diff: Vec<String> = a
        .keys()
        .chain(b.keys())
        .filter(|k| a.get(*k) != b.get(*k))
        .take(5)
        .map(|k| format!("{k}: {:?} vs {:?}", a.get(k), b.get(k)))
        .collect();
    Err(diff.join("; "))
}

fn floors(ctx: &Ctx) -> Verdict {
    let mut n = 0usize;
    for p in [7, 11, 13, 17] {
        let t = ctx.table(p);
        for (f, sig) in t.index.sigs.iter().enumerate() {
            let rep = t.index.reps[f];
            let row: Vec<Status> = (0..DEGREES as u8)
                .map(|d| t.get(StatusTable::cell_id(f, d)))
                .collect();
            let chamber = chamber_of_shifted(rep + RHO);
            if let Chamber::Regular(v) = chamber {
                if row[v.length()] != Status::NonZero {
                    return Err(format!("p={p} {rep}: H^{} not NZ", v.length()));
                }
            }
            if sig[0] >= 1 && sig[1] >= 1 && sig_in_closed_ball(sig, p) {
                let kempf: Vec<Status> = (0..DEGREES)
                    .map(|d| {
                        if d == 0 {
                            Status::NonZero
                        } else {
                            Status::Zero
                        }
                    })
                    .collect();
                if row != kempf {
                    return Err(format!("p={p} dominant {rep}: {row:?}"));
                }
            }
            if in_pn(rep, p, 1) && row[..] != bott_profile(chamber)[..] {
                return Err(format!("p={p} {rep} in P_1: {row:?}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} facettes"))
}

fn alcove_of(w: Weight, p: i64) -> Option<AlcoveId> {
    match classify(w, p).ok()? {
        FacetteKey::Alcove(a) => Some(a),
        _ => None,
    }
}

fn beyond(ctx: &Ctx) -> Verdict {
    let p = 7;
    let start = Instant::now();
    let run =
        find_failures(p, failure_window(p), &ctx.ledger, &ctx.labels).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let anchor = Weight::new(93, -49);
    let a = alcove_of(anchor, p).ok_or("anchor is not in an alcove")?;
    let mut wrong = Vec::new();
    if run.failures.len() != 18 {
        wrong.push(format!("{} failures", run.failures.len()));
    }
    if !run.failures.iter().any(|f| f.alcove == a) {
        wrong.push("anchor missing".into());
    }
    let t = &run.table;
    let cases = [
        (
            anchor,
            (2 * p - 2, -(p + 1)),
            "F^w_{3/4}",
            (2 * p - 1, -p),
            "F^y_{4/5}",
        ),
        (
            anchor - Weight::new(p, 0),
            (2 * p - 3, -(p + 1)),
            "F^w_{3/4}",
            (2 * p - 2, -p),
            "F^y_{3/4}",
        ),
    ];
    for (lambda, plus, plus_name, minus, minus_name) in cases {
        let (plus, minus) = (Weight::new(plus.0, plus.1), Weight::new(minus.0, minus.1));
        let expected = [
            BoxWitness {
                chi: plus,
                r: 1,
                plus: true,
            },
            BoxWitness {
                chi: minus,
                r: 1,
                plus: false,
            },
        ];
        if !box_member(lambda, plus, 1, true, p) || !box_member(lambda, minus, 1, false, p) {
            wrong.push(format!("{lambda}: box membership"));
        }
        if box_centres(lambda, 1, p) != expected {
            wrong.push(format!("{lambda}: box centres"));
        }
        for (chi, name) in [(plus, plus_name), (minus, minus_name)] {
            let sig = signature_of(chi, p).map_err(|e| e.to_string())?;
            let got = describe(&sig, p, &ctx.labels);
            if got != name || status(t, &sig, 4) != Status::Zero {
                wrong.push(format!("{chi}: {got} H^4={}", status(t, &sig, 4)));
            }
        }
    }
    if predict57(anchor, 4, t) {
        wrong.push("predictor claims vanishing at the anchor".into());
    }
    let f = t
        .index
        .find_sig(&a.signature())
        .ok_or("anchor outside the table")?;
    let c = StatusTable::cell_id(f, 4);
    if t.get(c) != Status::NonZero || !certified_cells(t)[c as usize] {
        wrong.push(format!("anchor H^4 = {}", t.get(c)));
    }
    if took > Duration::from_secs(60) {
        wrong.push(format!("took {:.1}s", took.as_secs_f64()));
    }
    let note = format!(
        "{} failures in {:.2}s",
        run.failures.len(),
        took.as_secs_f64()
    );
    if wrong.is_empty() {
        Ok(note)
    } else {
        Err(format!("{note}; {}", wrong.join("; ")))
    }
}

fn quantum(ctx: &Ctx) -> Verdict {
    let cfg = QuantumConfig::new(7).map_err(|e| e.to_string())?;
    let q = quantum_table(cfg, Window::ball(21), &ctx.ledger, &ctx.labels)
        .map_err(|e| format!("radius 3l^2: {e}"))?;
    let m = ctx.table(7);
    let mut cells = 0;
    for (f, sig) in m.index.sigs.iter().enumerate() {
        if !sig_in_closed_ball(sig, 7) {
            continue;
        }
        for d in 0..DEGREES as u8 {
            cells += 1;
            let (a, b) = (m.get(StatusTable::cell_id(f, d)), status(&q, sig, d));
            if a != b {
                return Err(format!(
                    "{} H^{d}: modular {a}, quantum {b}",
                    m.index.keys[f]
                ));
            }
        }
    }
    Ok(format!("{cells} cells agree; ball(21) complete"))
}

fn golden_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn parity(ctx: &Ctx) -> Verdict {
    let report = validate_figures(&ctx.ledger, &ctx.labels, &ctx.t17).map_err(|e| e.to_string())?;
    if !report.is_clean() {
        let first: Vec<String> = report.mismatches().take(5).map(|m| m.to_string()).collect();
        return Err(first.join("; "));
    }
    let checked: usize = report.figures.iter().map(|f| f.1).sum();
    let goldens = [
        ("p7-h12345.txt", 7, vec![1, 2, 3, 4, 5], Format::Text),
        ("p7-h4.svg", 7, vec![4], Format::Svg),
        ("p17-h12345.txt", 17, vec![1, 2, 3, 4, 5], Format::Text),
    ];
    for (file, p, degrees, format) in goldens {
        let spec = RenderSpec::new(degrees, format);
        let t = ctx.table(p);
        let once = render(t, &ctx.labels, &spec);
        let twice = render(t, &ctx.labels, &spec);
        let stored =
            std::fs::read_to_string(golden_dir().join(file)).map_err(|e| format!("{file}: {e}"))?;
        if once != twice || once != stored {
            return Err(format!("{file} is not stable"));
        }
    }
    Ok(format!(
        "{} pictures, {checked} cells, 3 golden files",
        report.figures.len()
    ))
}

/// Cones of vanishing named in the text: everything above the alcove at
/// that degree.
const CONES: &[(&str, u8)] = &[
    ("A_1^w", 4),
    ("A_7^w", 4),
    ("A_15^z", 4),
    ("A_6^z", 4),
    ("A_1^y", 3),
    ("A_8^y", 3),
    ("A_1^x", 3),
    ("A_4^x", 3),
    ("A_11^x", 3),
    ("A_25^x", 3),
];

fn order_audit(ctx: &Ctx) -> Verdict {
    let mut notes = Vec::new();
    for p in [17, 19] {
        let t = ctx.table(p);
        let ball = Window::ball(p);
        let alcoves: Vec<AlcoveId> = t
            .index
            .sigs
            .iter()
            .filter(|s| kind_of(s) == FacetteKind::Alcove && sig_in_closed_ball(s, p))
            .map(|s| AlcoveId::from_signature(s))
            .collect();
        let mut total = 0;
        for &(name, d) in CONES {
            let base = AlcoveId::from_signature(&sel(ctx, name));
            let mut above = 0;
            for a in &alcoves {
                if !is_above_within(a, &base, &ball).map_err(|e| e.to_string())? {
                    continue;
                }
                above += 1;
                let s = status(t, &a.signature(), d);
                if s != Status::Zero {
                    return Err(format!(
                        "p={p}: H^{d}({}) = {s} lies above {name}",
                        describe(&a.signature(), p, &ctx.labels)
                    ));
                }
            }
            // Cross-check the order against a direct upward walk.
            if above != upward_closure(&base.signature(), p) {
                return Err(format!(
                    "p={p}: order and upward walk disagree above {name}"
                ));
            }
            total += above;
        }
        notes.push(format!("p={p} {total} alcoves"));
    }
    Ok(format!("{} cones, {}", CONES.len(), notes.join(", ")))
}

/// Alcoves of `P̄_2` reached from `base` by crossing walls upwards.
fn upward_closure(base: &Signature, p: i64) -> usize {
    let mut seen = std::collections::BTreeSet::from([*base]);
    let mut stack = vec![*base];
    while let Some(s) = stack.pop() {
        for w in alcove_walls(&s) {
            if !w.alcove_is_upper && sig_in_closed_ball(&w.neighbor, p) && seen.insert(w.neighbor) {
                stack.push(w.neighbor);
            }
        }
    }
    seen.len()
}

fn main() -> ExitCode {
    let labels = LabelTable::builtin();
    let ledger = Ledger::builtin(Level::L2, &labels);
    let mut small = Vec::new();
    for p in [7, 11, 13] {
        let start = Instant::now();
        match solve(p, &ledger, &labels) {
            Ok(t) => small.push((p, t, start.elapsed())),
            Err(e) => {
                println!("saturation failed at p={p}: {e}");
                return ExitCode::FAILURE;
            }
        }
    }
    let t17 = solve(17, &ledger, &labels).expect("saturation at 17");
    let t19 = solve(19, &ledger, &labels).expect("saturation at 19");
    let ctx = Ctx {
        labels,
        ledger,
        small,
        t17,
        t19,
    };

    let criteria: [(&str, fn(&Ctx) -> Verdict); 10] = [
        ("completeness", completeness),
        ("consistency", consistency),
        ("serre symmetry", serre),
        ("spot checks", battery),
        ("pattern stability", stability),
        ("bott, kempf and P_1 floors", floors),
        ("beyond the p^2 alcoves", beyond),
        ("quantum agreement", quantum),
        ("figure parity", parity),
        ("order audit", order_audit),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check(&ctx) {
            Ok(note) => println!("criterion {:2} PASS {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

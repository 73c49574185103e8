//! Weights outside `P̄_2`: non-vanishing forced by Frobenius boxes, the
//! box principle as a predictor, and a search for weights where it fails.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::engine::{Engine, RuleSet, SaturateOptions};
use crate::facette::{
    alcove_walls, in_pn, is_above_within, kind_of, sig_in_closed_ball, signature_of,
    translate_signature, AlcoveId, FacetteKind, Signature, Window,
};
use crate::kb::{Mode, Status, StatusTable};
use crate::labels::LabelTable;
use crate::lattice::{Weight, RHO};
use crate::ledger::Ledger;
use crate::report::{certified_cells, describe, SolveError};
use crate::weyl::WeylElem;

/// `λ ∈ pʳ·χ + X_{pʳ}` (`plus`) or `λ ∈ pʳ·χ − X_{pʳ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxWitness {
    pub chi: Weight,
    pub r: u32,
    pub plus: bool,
}

/// Every box containing `λ` whose centre `χ` lies in `P̄_2`, with the status
/// of `χ` in degree `i` (`r = 0` is `λ` itself when it lies in `P̄_2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictionOutcome {
    pub forced_nonzero: bool,
    pub principle_predicts: bool,
    pub witnesses: Vec<BoxWitness>,
    pub boxes: Vec<(BoxWitness, Status)>,
}

/// The two box centres at scale `pʳ`: `χ + ρ = ⌊(λ+ρ)/pʳ⌋` and `⌈(λ+ρ)/pʳ⌉`.
pub fn box_centres(lambda: Weight, r: u32, p: i64) -> [BoxWitness; 2] {
    let q = p.checked_pow(r).expect("p^r overflow");
    let x = lambda + RHO;
    let lo = Weight::new(x.a.div_euclid(q), x.b.div_euclid(q)) - RHO;
    let hi = Weight::new(-(-x.a).div_euclid(q), -(-x.b).div_euclid(q)) - RHO;
    [
        BoxWitness {
            chi: lo,
            r,
            plus: true,
        },
        BoxWitness {
            chi: hi,
            r,
            plus: false,
        },
    ]
}

/// Smallest `n` with `λ ∈ P_n`.
pub fn level_of(lambda: Weight, p: i64) -> u32 {
    let mut n = 1;
    while !in_pn(lambda, p, n) {
        n += 1;
    }
    n
}

fn status_in_p2(table: &StatusTable, sig: &Signature, degree: u8) -> Option<Status> {
    if !sig_in_closed_ball(sig, table.p) {
        return None;
    }
    let f = table.index.find_sig(sig)?;
    Some(table.get(StatusTable::cell_id(f, degree)))
}

/// Box analysis of `(λ, i)` against a table that covers `P̄_2`.
///
/// `forced_nonzero` uses boxes with `r ≥ 1` only (always sound);
/// `principle_predicts` also reads `λ` itself from the table when `λ ∈ P̄_2`.
/// Boxes are searched up to one level past the first `n` with `λ ∈ P_n`,
/// after which the centres repeat.
pub fn analyse(lambda: Weight, degree: u8, table: &StatusTable) -> PredictionOutcome {
    let p = table.p;
    let mut boxes = BTreeSet::new();
    let own = signature_of(lambda, p)
        .ok()
        .and_then(|s| status_in_p2(table, &s, degree));
    if let Some(st) = own {
        boxes.insert((
            BoxWitness {
                chi: lambda,
                r: 0,
                plus: true,
            },
            st,
        ));
    }
    for r in 1..=level_of(lambda, p) + 1 {
        for w in box_centres(lambda, r, p) {
            let Ok(sig) = signature_of(w.chi, p) else {
                continue;
            };
            if let Some(st) = status_in_p2(table, &sig, degree) {
                boxes.insert((w, st));
            }
        }
    }
    let boxes: Vec<(BoxWitness, Status)> = boxes.into_iter().collect();
    let witnesses: Vec<BoxWitness> = boxes
        .iter()
        .filter(|(_, s)| *s == Status::NonZero)
        .map(|(w, _)| *w)
        .collect();
    PredictionOutcome {
        forced_nonzero: witnesses.iter().any(|w| w.r >= 1),
        principle_predicts: !witnesses.is_empty(),
        witnesses,
        boxes,
    }
}

/// The principle's prediction for `H^i(λ) ≠ 0`.
pub fn predict57(lambda: Weight, degree: u8, table: &StatusTable) -> bool {
    analyse(lambda, degree, table).principle_predicts
}

/// Sound non-vanishing from boxes, with the witnesses (empty if not forced).
pub fn forced_nonzero(lambda: Weight, degree: u8, table: &StatusTable) -> (bool, Vec<BoxWitness>) {
    let o = analyse(lambda, degree, table);
    let w: Vec<BoxWitness> = o.witnesses.into_iter().filter(|w| w.r >= 1).collect();
    (!w.is_empty(), w)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScriptError {
    #[error("script step `{step}` failed: {detail}")]
    ScriptPremiseFailed { step: &'static str, detail: String },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// One checked step of the failure script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptStep {
    pub step: &'static str,
    pub detail: String,
}

/// An alcove with `H^4 ≠ 0` certified although no box predicts it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub alcove: AlcoveId,
    pub representative: Weight,
}

#[derive(Clone, Debug)]
pub struct FailureRun {
    /// The anchor alcove `(2p²−p)ω_α − p²ω_β + A_2`.
    pub anchor: AlcoveId,
    pub steps: Vec<ScriptStep>,
    pub failures: Vec<Failure>,
    /// The saturated table the script read from.
    pub table: StatusTable,
}

/// Window large enough for the script at `p`.
pub fn failure_window(p: i64) -> Window {
    Window::ball(2 * p + 2)
}

struct Script<'a> {
    table: &'a StatusTable,
    certified: Vec<bool>,
    labels: &'a LabelTable,
    steps: Vec<ScriptStep>,
}

fn fail(step: &'static str, detail: String) -> ScriptError {
    ScriptError::ScriptPremiseFailed { step, detail }
}

impl Script<'_> {
    fn facette(&self, step: &'static str, sig: &Signature) -> Result<usize, ScriptError> {
        self.table
            .index
            .find_sig(sig)
            .ok_or_else(|| fail(step, format!("{sig:?} is outside the window")))
    }

    fn rep(&self, step: &'static str, sig: &Signature) -> Result<Weight, ScriptError> {
        Ok(self.table.index.reps[self.facette(step, sig)?])
    }

    fn name(&self, sig: &Signature) -> String {
        describe(sig, self.table.p, self.labels)
    }

    /// `H^d(F) = want`, decided without advisory steps.
    fn require(
        &self,
        step: &'static str,
        sig: &Signature,
        d: u8,
        want: Status,
    ) -> Result<(), ScriptError> {
        let c = StatusTable::cell_id(self.facette(step, sig)?, d);
        let got = self.table.get(c);
        if got != want || !self.certified[c as usize] {
            let how = if got == want { "uncertified" } else { "found" };
            return Err(fail(
                step,
                format!(
                    "H^{d}({}) {how} {got}, needed certified {want}",
                    self.name(sig)
                ),
            ));
        }
        Ok(())
    }

    fn log(&mut self, step: &'static str, detail: String) {
        self.steps.push(ScriptStep { step, detail });
    }
}

fn alcove_sig(labels: &LabelTable, index: u32, v: WeylElem) -> Signature {
    labels
        .signature(index, v)
        .expect("label table covers the P̄_2 alcoves used here")
}

/// Replays the derivation of non-vanishing `H^4` near
/// `A = (2p²−p)ω_α − p²ω_β + A_2` and returns every alcove of `A_3^{2,w}`
/// above `A_1 + (2p−3)pω_α − p²ω_β` on which the box principle predicts
/// vanishing. Each step checks its premises on the saturated table first.
pub fn find_failures(
    p: i64,
    window: Window,
    ledger: &Ledger,
    labels: &LabelTable,
) -> Result<FailureRun, ScriptError> {
    let mut e = Engine::new(StatusTable::new(p, Mode::Modular, window), labels);
    e.set_ledger(&ledger.facts(labels, p).map_err(SolveError::from)?)
        .map_err(SolveError::from)?;
    e.saturate(RuleSet::all(), &SaturateOptions::default())
        .map_err(SolveError::from)?;
    let table = e.table;
    let mut s = Script {
        certified: certified_cells(&table),
        table: &table,
        labels,
        steps: Vec::new(),
    };

    // Anchor: boxes see only vanishing H^4.
    let shift = Weight::new(2 * p - 1, -p);
    let a = translate_signature(&alcove_sig(labels, 2, WeylElem::E), shift);
    let a_rep = s.rep("anchor", &a)?;
    let o = analyse(a_rep, 4, &table);
    if o.principle_predicts || o.boxes.iter().all(|(w, _)| w.r != 1) {
        return Err(fail(
            "anchor",
            format!("boxes of {a_rep} in degree 4: {:?}", o.boxes),
        ));
    }
    let mut seen = Vec::new();
    for (w, _) in &o.boxes {
        let sig = signature_of(w.chi, p).map_err(|e| fail("anchor", format!("{e}")))?;
        seen.push(format!(
            "{}{} r={} {}",
            w.chi,
            if w.plus { "+" } else { "-" },
            w.r,
            s.name(&sig)
        ));
    }
    s.log(
        "anchor",
        format!("{a_rep}: every box has H^4 = 0 ({})", seen.join(", ")),
    );

    // Seed: the neighbour A' of A in A_4^{2,w} has H^5 ≠ 0 from a p²-box.
    // p²-alcoves carry the floor vectors of p-alcoves one level up.
    let floors = |sig: &Signature| sig.map(|k| (k - 1).div_euclid(2));
    let q = |sig: &Signature| floors(sig).map(|n| n.div_euclid(p));
    let top = floors(&alcove_sig(labels, 4, WeylElem::W));
    let walls: Vec<_> = alcove_walls(&a)
        .into_iter()
        .filter(|w| q(&w.neighbor) == top)
        .collect();
    let [wall] = walls.as_slice() else {
        return Err(fail(
            "seed",
            format!("{} neighbours of A lie in A_4^(2,w)", walls.len()),
        ));
    };
    let a2 = wall.neighbor;
    let a2_rep = s.rep("seed", &a2)?;
    let (forced, wit) = forced_nonzero(a2_rep, 5, &table);
    if !forced {
        return Err(fail("seed", format!("no box forces H^5({a2_rep}) != 0")));
    }
    s.require("seed", &a2, 5, Status::NonZero)?;
    let w0 = wit[0];
    s.log(
        "seed",
        format!(
            "H^5({a2_rep}) != 0 from chi={} r={} {}",
            w0.chi,
            w0.r,
            if w0.plus { "+" } else { "-" }
        ),
    );

    // Crossing into A: the wall vanishes in degree 5 and A sits above it.
    if !wall.alcove_is_upper {
        return Err(fail("sequence", "A is below its wall to A'".into()));
    }
    s.require("sequence", &wall.wall, 5, Status::Zero)?;
    s.require("sequence", &a, 4, Status::NonZero)?;
    s.log(
        "sequence",
        format!("H^5({}) = 0, hence H^4({a_rep}) != 0", s.name(&wall.wall)),
    );

    // The two translates A − kpω_α.
    for k in 1..=2 {
        let t = translate_signature(&a, Weight::new(-k, 0));
        let rep = s.rep("translates", &t)?;
        s.require("translates", &t, 4, Status::NonZero)?;
        if predict57(rep, 4, &table) {
            return Err(fail("translates", format!("boxes predict H^4({rep}) != 0")));
        }
        s.log("translates", format!("H^4({rep}) != 0, boxes predict 0"));
    }

    // The region above (A − 2pω_α)s.
    let bottom = translate_signature(
        &alcove_sig(labels, 1, WeylElem::E),
        Weight::new(2 * p - 3, -p),
    );
    let lowest = translate_signature(&a, Weight::new(-2, 0));
    if !alcove_walls(&lowest)
        .iter()
        .any(|w| w.neighbor == bottom && w.alcove_is_upper)
    {
        return Err(fail(
            "region",
            "the bottom alcove is not directly below A - 2p w_alpha".into(),
        ));
    }
    let region = floors(&alcove_sig(labels, 3, WeylElem::W));
    let bottom_id = AlcoveId::new(floors(&bottom));
    let mut failures = Vec::new();
    let mut predicted = 0;
    for (f, sig) in table.index.sigs.iter().enumerate() {
        if kind_of(sig) != FacetteKind::Alcove || q(sig) != region {
            continue;
        }
        let id = AlcoveId::new(floors(sig));
        let above = is_above_within(&id, &bottom_id, &window)
            .map_err(|e| fail("region", format!("{e}")))?;
        if !above {
            continue;
        }
        s.require("region", sig, 4, Status::NonZero)?;
        let rep = table.index.reps[f];
        if predict57(rep, 4, &table) {
            predicted += 1;
        } else {
            failures.push(Failure {
                alcove: id,
                representative: rep,
            });
        }
    }
    failures.sort_by_key(|f| f.alcove);
    s.log(
        "region",
        format!(
            "{} alcoves with H^4 != 0 unpredicted, {predicted} predicted",
            failures.len()
        ),
    );
    let steps = s.steps;
    Ok(FailureRun {
        anchor: AlcoveId::new(floors(&a)),
        steps,
        failures,
        table,
    })
}

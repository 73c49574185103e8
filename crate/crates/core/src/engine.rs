//! Seeding and saturation of a [`StatusTable`].
//!
//! Saturation runs in rounds. Each round evaluates every enabled rule against
//! the table as it stood at the start of the round, sorts the resulting batch
//! by `(cell, rule, premises)` and applies it. A cell keeps the provenances
//! produced in the round that decided it; later agreeing derivations are only
//! checked for conflicts. The fixpoint is therefore independent of the order
//! in which rules and facettes are visited.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::facette::{
    alcove_walls, box_index, chamber_of_signature, dot_signature, dot_signature_about, in_closure,
    kind_of, sig_in_closed_ball, signature_of, special_points_of, translate_signature,
    FacetteIndex, FacetteKey, FacetteKind, Signature, Window,
};
use crate::kb::{
    CellId, KbError, Mode, Provenance, RuleId, Status, StatusTable, DEGREES, MAX_DEGREE,
};
use crate::labels::{common_wall, LabelTable};
use crate::lattice::{pairing_vector, Weight, RHO};
use crate::weyl::{chamber_of_shifted, Chamber, WeylElem};

/// A subset of [`RuleId`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RuleSet(u32);

impl RuleSet {
    pub fn all() -> Self {
        RuleSet(RuleId::ALL.iter().fold(0, |m, r| m | (1 << *r as u32)))
    }

    pub fn empty() -> Self {
        RuleSet(0)
    }

    pub fn with(self, r: RuleId) -> Self {
        RuleSet(self.0 | (1 << r as u32))
    }

    pub fn without(self, r: RuleId) -> Self {
        RuleSet(self.0 & !(1 << r as u32))
    }

    pub fn contains(self, r: RuleId) -> bool {
        self.0 & (1 << r as u32) != 0
    }
}

/// A fact injected from the ledger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerFact {
    pub id: String,
    pub facette: FacetteKey,
    pub degree: u8,
    pub status: Status,
    pub citation: String,
}

#[derive(Clone, Debug, Default)]
pub struct SaturateOptions {
    /// Visit facettes in this order instead of the canonical one.
    pub facette_order: Option<Vec<usize>>,
    /// Stop after this many rounds (for inspection); `None` runs to the fixpoint.
    pub max_rounds: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Kb(#[from] KbError),
    #[error("ledger entry {id} names a facette outside the window")]
    LedgerOutOfWindow { id: String },
    #[error("{rule} forces non-vanishing in degree {degree} at {key}")]
    DegreeOverflow {
        key: FacetteKey,
        degree: i32,
        rule: RuleId,
    },
}

/// Characteristic-0 profile: nonzero exactly in degree `l(v)` for regular weights.
pub fn bott_profile(chamber: Chamber) -> [Status; DEGREES] {
    let mut out = [Status::Zero; DEGREES];
    if let Chamber::Regular(v) = chamber {
        out[v.length()] = Status::NonZero;
    }
    out
}

#[derive(Clone, Debug)]
struct WallLink {
    wall: Option<u32>,
    upper: Option<u32>,
}

#[derive(Clone, Debug)]
struct ConeData {
    special: u32,
    /// The alcoves around the special point, all in the window.
    around: Vec<u32>,
    /// Alcoves of `ν + X⁺` in the window.
    cone_alcoves: Vec<u32>,
    /// All facettes of `ν + X⁺` in the window.
    cone_all: Vec<u32>,
    /// Orbits `{w·F}` with their maximal element, for `F` through `ν`.
    orbits: Vec<(u32, Vec<u32>)>,
}

#[derive(Clone, Debug)]
struct Info {
    sig: Signature,
    kind: FacetteKind,
    chamber: Chamber,
    dominant: bool,
    in_p2: bool,
    serre: Option<u32>,
    faces: Vec<u32>,
    cofaces: Vec<u32>,
    /// For alcoves: walls where this alcove is the lower side.
    up_walls: Vec<WallLink>,
    /// Frobenius partner: facette of `λ` for the special point `p·λ`.
    frob: Option<u32>,
    /// Characteristic-0 profile of `λ` for the special point `p·λ` (quantum mode).
    qbott: Option<[Status; DEGREES]>,
    /// Box sources (facettes of `λ` with this facette in `p^r·λ ± X_{p^r}`).
    box_sources: Vec<u32>,
    /// Degrees forced nonzero by regular special points next to this facette.
    special_reg: Vec<(u8, Weight)>,
    /// Partners `s_γ·F` with `H^{i+1}(s_γ·F) ≅ H^i(F)`.
    refl: Vec<u32>,
}

struct Context {
    info: Vec<Info>,
    cones: Vec<ConeData>,
    f34: Vec<u32>,
    ledger: Vec<(u32, u8, Status, Arc<str>)>,
}

fn refl_level_ok(k: i64, p: i64) -> bool {
    // 0 < ⟨λ+ρ, γ∨⟩ = s·p^m with 1 ≤ s < p: the first open strip, or a
    // hyperplane at level s·p^j.
    if k == 1 {
        return true;
    }
    if k <= 0 || k % 2 != 0 {
        return false;
    }
    let mut level = k / 2;
    while level % p == 0 {
        level /= p;
    }
    level < p
}

impl Context {
    fn build(index: &FacetteIndex, mode: Mode, labels: &LabelTable) -> Context {
        let p = index.p;
        let n = index.len();
        let find = |s: &Signature| index.find_sig(s).map(|i| i as u32);
        let bound = index.window.bound().unwrap_or(0);
        let mut info: Vec<Info> = (0..n)
            .map(|i| {
                let sig = index.sigs[i];
                let chamber = chamber_of_signature(&sig);
                Info {
                    sig,
                    kind: kind_of(&sig),
                    chamber,
                    dominant: sig[0] >= 1 && sig[1] >= 1,
                    in_p2: mode == Mode::Quantum || sig_in_closed_ball(&sig, p),
                    serre: find(&sig.map(|k| -k)),
                    faces: Vec::new(),
                    cofaces: Vec::new(),
                    up_walls: Vec::new(),
                    frob: None,
                    qbott: None,
                    box_sources: Vec::new(),
                    special_reg: Vec::new(),
                    refl: Vec::new(),
                }
            })
            .collect();

        for i in 0..n {
            let sig = info[i].sig;
            if info[i].kind == FacetteKind::Alcove {
                for w in alcove_walls(&sig) {
                    let wall = find(&w.wall);
                    if let Some(wi) = wall {
                        info[i].faces.push(wi);
                        info[wi as usize].cofaces.push(i as u32);
                    }
                    if !w.alcove_is_upper {
                        info[i].up_walls.push(WallLink {
                            wall,
                            upper: find(&w.neighbor),
                        });
                    }
                }
            }
            if info[i].kind != FacetteKind::SpecialPoint {
                for u in special_points_of(&sig) {
                    let s = pairing_vector(u).map(|x| 2 * x);
                    if let Some(si) = find(&s) {
                        info[i].faces.push(si);
                        info[si as usize].cofaces.push(i as u32);
                    }
                }
            } else {
                let u = Weight::new(sig[0] / 2, sig[1] / 2);
                let lambda = u - RHO;
                match mode {
                    Mode::Modular => {
                        info[i].frob = signature_of(lambda, p).ok().and_then(|s| find(&s));
                    }
                    Mode::Quantum => info[i].qbott = Some(bott_profile(chamber_of_shifted(u))),
                }
            }

            // Frobenius boxes. In quantum mode only r = 1 exists and its source
            // is read in characteristic 0, which is the Bott degree of the box
            // index recorded in `special_reg` below, not a table cell.
            let mut sources = BTreeSet::new();
            let rmax = if mode == Mode::Quantum { 0 } else { 64 };
            let mut scale: i64 = 1;
            for _ in 0..rmax {
                for plus in [true, false] {
                    let u = box_index(&sig, scale, plus);
                    if let Ok(s) = signature_of(u - RHO, p) {
                        if let Some(j) = find(&s) {
                            sources.insert(j);
                        }
                    }
                }
                if scale > 2 * bound + 2 {
                    break;
                }
                scale = match scale.checked_mul(p) {
                    Some(s) => s,
                    None => break,
                };
            }
            info[i].box_sources = sources.into_iter().collect();
            for plus in [true, false] {
                let u = box_index(&sig, 1, plus);
                if let Chamber::Regular(v) = chamber_of_shifted(u) {
                    info[i].special_reg.push((v.length() as u8, u));
                }
            }
            info[i].special_reg.sort();
            info[i].special_reg.dedup_by_key(|x| x.0);

            // Simple reflections with the facette on the positive side.
            for (g, s) in [(0usize, WeylElem::S), (1, WeylElem::T)] {
                if refl_level_ok(sig[g], p) {
                    if let Some(j) = find(&dot_signature(s, &sig)) {
                        info[i].refl.push(j);
                    }
                }
            }
        }
        for inf in info.iter_mut() {
            inf.faces.sort();
            inf.faces.dedup();
            inf.cofaces.sort();
            inf.cofaces.dedup();
        }

        // Cones at special points.
        let mut cones = Vec::new();
        for i in 0..n {
            if info[i].kind != FacetteKind::SpecialPoint {
                continue;
            }
            let sig = info[i].sig;
            let u = Weight::new(sig[0] / 2, sig[1] / 2);
            let top = translate_signature(&[1; 6], u);
            let around: Option<Vec<u32>> = WeylElem::all()
                .map(|w| find(&dot_signature_about(w, u, &top)))
                .collect();
            let in_cone = |s: &Signature| s[0] >= sig[0] && s[1] >= sig[1];
            let mut orbits = Vec::new();
            let mut through: BTreeSet<Signature> = BTreeSet::new();
            for w in WeylElem::all() {
                let a = dot_signature_about(w, u, &top);
                through.insert(a);
                for wl in alcove_walls(&a) {
                    if in_closure(&sig, &wl.wall) {
                        through.insert(wl.wall);
                    }
                }
            }
            for f in &through {
                if !in_cone(f) {
                    continue;
                }
                let orbit: Option<BTreeSet<u32>> = WeylElem::all()
                    .map(|w| find(&dot_signature_about(w, u, f)))
                    .collect();
                if let (Some(fi), Some(orbit)) = (find(f), orbit) {
                    orbits.push((fi, orbit.into_iter().collect()));
                }
            }
            let mut cone_alcoves = Vec::new();
            let mut cone_all = Vec::new();
            for j in 0..n {
                if in_cone(&info[j].sig) {
                    cone_all.push(j as u32);
                    if info[j].kind == FacetteKind::Alcove {
                        cone_alcoves.push(j as u32);
                    }
                }
            }
            cones.push(ConeData {
                special: i as u32,
                around: around.unwrap_or_default(),
                cone_alcoves,
                cone_all,
                orbits,
            });
        }

        let mut f34 = Vec::new();
        if let (Some(a3), Some(a4)) = (
            labels.signature(3, WeylElem::E),
            labels.signature(4, WeylElem::E),
        ) {
            if let Some((wall, _)) = common_wall(&a3, &a4) {
                for v in WeylElem::all() {
                    if let Some(j) = find(&dot_signature(v, &wall)) {
                        f34.push(j);
                    }
                }
            }
        }
        f34.sort();
        f34.dedup();

        Context {
            info,
            cones,
            f34,
            ledger: Vec::new(),
        }
    }
}

type Emit = (CellId, bool, RuleId, Arc<[CellId]>, bool);

struct Round<'a> {
    t: &'a StatusTable,
    out: Vec<Emit>,
    overflow: Option<EngineError>,
}

impl Round<'_> {
    fn st(&self, f: u32, d: i32) -> Status {
        self.t.at(f as usize, d)
    }

    fn z(&self, f: u32, d: i32) -> bool {
        self.st(f, d) == Status::Zero
    }

    fn nz(&self, f: u32, d: i32) -> bool {
        self.st(f, d) == Status::NonZero
    }

    fn cell(f: u32, d: i32) -> Option<CellId> {
        (0..=MAX_DEGREE as i32)
            .contains(&d)
            .then(|| StatusTable::cell_id(f as usize, d as u8))
    }

    fn premises(list: &[(u32, i32)]) -> Arc<[CellId]> {
        list.iter().filter_map(|&(f, d)| Self::cell(f, d)).collect()
    }

    fn emit(&mut self, f: u32, d: i32, nz: bool, rule: RuleId, prem: &[(u32, i32)]) {
        self.emit_adv(f, d, nz, rule, prem, false)
    }

    fn emit_adv(
        &mut self,
        f: u32,
        d: i32,
        nz: bool,
        rule: RuleId,
        prem: &[(u32, i32)],
        advisory: bool,
    ) {
        self.emit_shared(f, d, nz, rule, || Self::premises(prem), advisory)
    }

    /// Premise lists can be long (a whole cone); one allocation is shared by
    /// every conclusion drawn from it.
    fn emit_shared(
        &mut self,
        f: u32,
        d: i32,
        nz: bool,
        rule: RuleId,
        prem: impl FnOnce() -> Arc<[CellId]>,
        advisory: bool,
    ) {
        let Some(c) = Self::cell(f, d) else {
            if nz && self.overflow.is_none() {
                self.overflow = Some(EngineError::DegreeOverflow {
                    key: self.t.index.keys[f as usize],
                    degree: d,
                    rule,
                });
            }
            return;
        };
        let want = if nz { Status::NonZero } else { Status::Zero };
        if self.t.get(c) == want {
            return;
        }
        self.out.push((c, nz, rule, prem(), advisory));
    }
}

fn layer_a(ctx: &Context, r: &mut Round<'_>, order: &[usize], rules: RuleSet) {
    for &i in order {
        let f = i as u32;
        let inf = &ctx.info[i];
        if rules.contains(RuleId::H0) {
            r.emit(f, 0, inf.dominant, RuleId::H0, &[]);
        }
        if rules.contains(RuleId::Kempf) && inf.dominant {
            for d in 1..=6 {
                r.emit(f, d, false, RuleId::Kempf, &[]);
            }
        }
        if rules.contains(RuleId::BottLb) {
            if let Chamber::Regular(v) = inf.chamber {
                r.emit(f, v.length() as i32, true, RuleId::BottLb, &[]);
            }
        }
        if rules.contains(RuleId::P1) && inf.sig.iter().all(|k| k.abs() <= 1) {
            for (d, s) in bott_profile(inf.chamber).iter().enumerate() {
                r.emit(f, d as i32, *s == Status::NonZero, RuleId::P1, &[]);
            }
        }
        if rules.contains(RuleId::SimpleSing) && (inf.sig[0] == 0 || inf.sig[1] == 0) {
            for d in 0..=6 {
                r.emit(f, d, false, RuleId::SimpleSing, &[]);
            }
        }
    }
    if rules.contains(RuleId::F34) {
        for &f in &ctx.f34 {
            for (d, s) in bott_profile(ctx.info[f as usize].chamber)
                .iter()
                .enumerate()
            {
                r.emit(f, d as i32, *s == Status::NonZero, RuleId::F34, &[]);
            }
        }
    }
}

fn layer_b(ctx: &Context, r: &mut Round<'_>, order: &[usize], rules: RuleSet, mode: Mode) {
    for &i in order {
        let f = i as u32;
        let inf = &ctx.info[i];
        for d in 0..=6i32 {
            let here = r.st(f, d);
            if rules.contains(RuleId::Serre) && here.is_decided() {
                if let Some(g) = inf.serre {
                    r.emit(g, 6 - d, here == Status::NonZero, RuleId::Serre, &[(f, d)]);
                }
            }
            if rules.contains(RuleId::Closure) {
                if here == Status::Zero {
                    for &g in &inf.faces {
                        r.emit(g, d, false, RuleId::Closure, &[(f, d)]);
                    }
                } else if here == Status::NonZero {
                    for &g in &inf.cofaces {
                        r.emit(g, d, true, RuleId::Closure, &[(f, d)]);
                    }
                }
            }
            if rules.contains(RuleId::Frob) && mode == Mode::Modular && here.is_decided() {
                if let Some(g) = inf.frob {
                    r.emit(g, d, here == Status::NonZero, RuleId::Frob, &[(f, d)]);
                    // The reverse direction is emitted from the partner's side below.
                }
            }
            if rules.contains(RuleId::ScaleNz) {
                for &s in &inf.box_sources {
                    if r.nz(s, d) {
                        r.emit(f, d, true, RuleId::ScaleNz, &[(s, d)]);
                    }
                }
            }
            if rules.contains(RuleId::Uct) && d < 6 {
                let chamber_len = inf.chamber.elem().map(|v| v.length() as i32);
                if chamber_len != Some(d + 1) && r.z(f, d + 2) && r.nz(f, d + 1) {
                    r.emit(f, d, true, RuleId::Uct, &[(f, d + 2), (f, d + 1)]);
                }
            }
            if rules.contains(RuleId::ReflIso) {
                for &g in &inf.refl {
                    let there = r.st(g, d + 1);
                    if here.is_decided() {
                        r.emit(
                            g,
                            d + 1,
                            here == Status::NonZero,
                            RuleId::ReflIso,
                            &[(f, d)],
                        );
                    }
                    if there.is_decided() {
                        r.emit(
                            f,
                            d,
                            there == Status::NonZero,
                            RuleId::ReflIso,
                            &[(g, d + 1)],
                        );
                    }
                }
                if d == 0 {
                    // H^0 of the reflected facette is H^{-1} of this one.
                    for &g in &inf.refl {
                        r.emit(g, 0, false, RuleId::ReflIso, &[]);
                    }
                }
            }
            // Wall crossings with this alcove below.
            for link in &inf.up_walls {
                let Some(up) = link.upper else { continue };
                let a = f;
                if rules.contains(RuleId::WallUpZ) && r.z(a, d + 1) && r.z(a, d) {
                    r.emit(up, d, false, RuleId::WallUpZ, &[(a, d + 1), (a, d)]);
                }
                let Some(w) = link.wall else { continue };
                if rules.contains(RuleId::WallNz) && r.z(a, d + 1) {
                    if r.nz(up, d) {
                        r.emit(w, d, true, RuleId::WallNz, &[(a, d + 1), (up, d)]);
                    }
                    if r.z(w, d) {
                        r.emit(up, d, false, RuleId::WallNz, &[(a, d + 1), (w, d)]);
                    }
                }
                if rules.contains(RuleId::SeqNz) {
                    // θ_s H^{d+1}(A) = 0: H^d(As) → H^{d+1}(A) is onto.
                    if r.z(w, d + 1) {
                        if r.nz(a, d + 1) {
                            r.emit(up, d, true, RuleId::SeqNz, &[(w, d + 1), (a, d + 1)]);
                        }
                        if r.z(up, d) {
                            r.emit(a, d + 1, false, RuleId::SeqNz, &[(w, d + 1), (up, d)]);
                        }
                    }
                    // θ_s H^d(A) = 0: H^d(As) → H^{d+1}(A) is injective.
                    if r.z(w, d) && r.nz(up, d) {
                        r.emit(a, d + 1, true, RuleId::SeqNz, &[(w, d), (up, d)]);
                    }
                }
            }
        }
        if inf.kind == FacetteKind::SpecialPoint {
            let singular = inf.chamber == Chamber::Singular;
            if rules.contains(RuleId::SpecialSing) && singular && inf.in_p2 {
                for d in 0..=6 {
                    r.emit(f, d, false, RuleId::SpecialSing, &[]);
                }
            }
            if let Some(profile) = inf.qbott {
                if rules.contains(RuleId::Frob) {
                    for (d, s) in profile.iter().enumerate() {
                        r.emit(f, d as i32, *s == Status::NonZero, RuleId::QFrob, &[]);
                    }
                }
            }
        }
        if rules.contains(RuleId::SpecialReg) {
            for &(d, _) in &inf.special_reg {
                r.emit(f, d as i32, true, RuleId::SpecialReg, &[]);
            }
        }
    }
    // Reverse Frobenius direction: the special point takes the status of λ.
    if rules.contains(RuleId::Frob) && mode == Mode::Modular {
        for &i in order {
            let inf = &ctx.info[i];
            if let Some(g) = inf.frob {
                for d in 0..=6 {
                    let s = r.st(g, d);
                    if s.is_decided() {
                        r.emit(i as u32, d, s == Status::NonZero, RuleId::Frob, &[(g, d)]);
                    }
                }
            }
        }
    }
    for cone in &ctx.cones {
        cone_rules(ctx, r, cone, rules, mode);
    }
    if rules.contains(RuleId::Ledger) {
        for &(f, d, s, ref _c) in &ctx.ledger {
            r.emit(f, d as i32, s == Status::NonZero, RuleId::Ledger, &[]);
        }
    }
}

fn cone_rules(ctx: &Context, r: &mut Round<'_>, cone: &ConeData, rules: RuleSet, mode: Mode) {
    let nu = cone.special;
    for j in 0..=6i32 {
        if !r.z(nu, j) {
            continue;
        }
        if rules.contains(RuleId::ConeIII) || rules.contains(RuleId::ConeI) {
            for (top, orbit) in &cone.orbits {
                let is_alcove = ctx.info[*top as usize].kind == FacetteKind::Alcove;
                let rule = if is_alcove {
                    RuleId::ConeI
                } else {
                    RuleId::ConeIII
                };
                if !rules.contains(rule) {
                    continue;
                }
                if orbit.iter().all(|&g| r.z(g, j + 1)) {
                    let mut prem: Vec<(u32, i32)> = alloc::vec![(nu, j)];
                    prem.extend(orbit.iter().map(|&g| (g, j + 1)));
                    r.emit(*top, j, false, rule, &prem);
                }
            }
        }
        if rules.contains(RuleId::ConeII)
            && cone.around.len() == 12
            && cone.around.iter().all(|&a| r.z(a, j + 1))
            && cone.cone_alcoves.iter().all(|&a| r.z(a, j + 1))
            && cone.cone_all.iter().any(|&g| !r.z(g, j))
        {
            let mut prem: Vec<(u32, i32)> = alloc::vec![(nu, j)];
            prem.extend(cone.around.iter().map(|&a| (a, j + 1)));
            prem.extend(cone.cone_alcoves.iter().map(|&a| (a, j + 1)));
            prem.sort();
            prem.dedup();
            // In degree 5 the premise on the whole unbounded cone is H^6 = 0, and
            // H^6(ν+λ) ≠ 0 with λ dominant forces −ν−2ρ dominant, i.e. H^6(ν) ≠ 0.
            let whole_cone = j == 5 && r.z(nu, 6);
            let shared = Round::premises(&prem);
            for &g in &cone.cone_all {
                let advisory = mode == Mode::Modular && !ctx.info[g as usize].in_p2 && !whole_cone;
                r.emit_shared(g, j, false, RuleId::ConeII, || shared.clone(), advisory);
            }
        }
    }
}

/// Builds an empty table over the window and applies the seeding rules.
pub fn seed(
    p: i64,
    mode: Mode,
    window: Window,
    labels: &LabelTable,
) -> Result<StatusTable, EngineError> {
    let table = StatusTable::new(p, mode, window);
    let mut engine = Engine::new(table, labels);
    engine.run_layer_a()?;
    Ok(engine.table)
}

/// A table together with the precomputed neighbourhood data used by the rules.
pub struct Engine {
    pub table: StatusTable,
    ctx: Context,
    round: u32,
}

impl Engine {
    pub fn new(table: StatusTable, labels: &LabelTable) -> Engine {
        let ctx = Context::build(&table.index, table.mode, labels);
        Engine {
            table,
            ctx,
            round: 0,
        }
    }

    pub fn set_ledger(&mut self, facts: &[LedgerFact]) -> Result<(), EngineError> {
        self.ctx.ledger.clear();
        for fact in facts {
            let f = self.table.index.find_key(&fact.facette).ok_or_else(|| {
                EngineError::LedgerOutOfWindow {
                    id: fact.id.clone(),
                }
            })?;
            self.ctx.ledger.push((
                f as u32,
                fact.degree,
                fact.status,
                Arc::from(fact.citation.as_str()),
            ));
        }
        Ok(())
    }

    fn apply(&mut self, mut batch: Vec<Emit>) -> Result<usize, EngineError> {
        batch.sort_by(|a, b| (a.0, a.2, &a.3).cmp(&(b.0, b.2, &b.3)));
        batch.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1 && a.2 == b.2 && a.3 == b.3);
        let mut new = 0;
        let ledger_cite = |ctx: &Context, c: CellId| -> Option<Arc<str>> {
            let (f, d) = StatusTable::split(c);
            ctx.ledger
                .iter()
                .find(|(lf, ld, _, _)| *lf as usize == f && *ld == d)
                .map(|x| x.3.clone())
        };
        for (cell, nz, rule, prem, advisory) in batch {
            let citation = if rule == RuleId::Ledger {
                ledger_cite(&self.ctx, cell)
            } else {
                None
            };
            let prov = Provenance {
                rule,
                premises: prem,
                citation,
                advisory,
            };
            let status = if nz { Status::NonZero } else { Status::Zero };
            let round = self.table.decided_round(cell);
            let was = self.table.get(cell);
            if was.is_decided() && was == status && round != self.current_round() {
                continue;
            }
            if self.table.assert_cell(cell, status, prov)? {
                new += 1;
            }
        }
        Ok(new)
    }

    fn current_round(&self) -> u32 {
        self.round
    }

    fn run_layer_a(&mut self) -> Result<usize, EngineError> {
        let order: Vec<usize> = (0..self.table.facette_count()).collect();
        let mut r = Round {
            t: &self.table,
            out: Vec::new(),
            overflow: None,
        };
        layer_a(&self.ctx, &mut r, &order, RuleSet::all());
        if let Some(e) = r.overflow {
            return Err(e);
        }
        let out = r.out;
        self.round = 0;
        self.table.set_round(0);
        self.apply(out)
    }

    /// Runs all enabled rules to the fixpoint.
    pub fn saturate(&mut self, rules: RuleSet, opts: &SaturateOptions) -> Result<u32, EngineError> {
        let order: Vec<usize> = match &opts.facette_order {
            Some(o) => o.clone(),
            None => (0..self.table.facette_count()).collect(),
        };
        let mut rounds = 0;
        loop {
            if opts.max_rounds.is_some_and(|m| rounds >= m) {
                break;
            }
            rounds += 1;
            self.round = rounds;
            self.table.set_round(rounds);
            let mut r = Round {
                t: &self.table,
                out: Vec::new(),
                overflow: None,
            };
            layer_a(&self.ctx, &mut r, &order, rules);
            layer_b(&self.ctx, &mut r, &order, rules, self.table.mode);
            if let Some(e) = r.overflow {
                return Err(e);
            }
            let out = r.out;
            if self.apply(out)? == 0 {
                break;
            }
        }
        Ok(rounds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refl_levels() {
        let p = 7;
        assert!(refl_level_ok(1, p));
        assert!(!refl_level_ok(3, p));
        assert!(!refl_level_ok(0, p));
        assert!(!refl_level_ok(-2, p));
        for l in 1..7 {
            assert!(refl_level_ok(2 * l, p));
        }
        assert!(refl_level_ok(14, p));
        assert!(!refl_level_ok(16, p));
        assert!(refl_level_ok(28, p));
        assert!(refl_level_ok(98, p));
    }

    #[test]
    fn bott_profiles() {
        let nz = |c| bott_profile(c).iter().position(|s| *s == Status::NonZero);
        assert_eq!(nz(Chamber::Regular(WeylElem::E)), Some(0));
        assert_eq!(nz(Chamber::Regular(WeylElem::W0)), Some(6));
        assert_eq!(nz(Chamber::Singular), None);
    }
}

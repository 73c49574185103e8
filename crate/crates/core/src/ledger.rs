//! Cited facts `H^i(F) = 0` / `≠ 0` fed to the engine from data files.
//!
//! One record per line: `id | selector | degree | status | level | citation`.
//! Selectors:
//!
//! * `A_{i}^{v}`, `A_i^v`, `A^v_i`, `A_i` for the numbered alcove `v·A_i`;
//! * `F_{i/j}^{v}`, `F^v_{i/j}` for the wall between `A_i^v` and `A_j^v`;
//! * `F_{A_i^u/A_j^v}` for the wall between two labeled alcoves;
//! * `alcove(n1,…,n6)` by floor vector, `facette(k1,…,k6)` by signature;
//! * `special(a,b)` for the special point `p·(a,b) − ρ`;
//! * `weight(a,b)` for the facette of a weight (depends on `p`).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::engine::LedgerFact;
use crate::facette::{
    chamber_of_signature, closure_vertices, is_realizable, kind_of, sig_in_closed_ball,
    signature_of, window_signatures, AlcoveId, FacetteKey, FacetteKind, Signature, Window,
};
use crate::kb::{Status, MAX_DEGREE};
use crate::labels::{common_wall, LabelTable, LabeledAlcove};
use crate::lattice::{pairing_vector, Weight};
use crate::weyl::WeylElem;

pub const LEDGER_L1: &str = include_str!("../data/ledger_l1.txt");
pub const LEDGER_L2: &str = include_str!("../data/ledger_l2.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    L1,
    L2,
}

impl Level {
    pub fn parse(s: &str) -> Option<Level> {
        match s {
            "L1" | "l1" => Some(Level::L1),
            "L2" | "l2" => Some(Level::L2),
            _ => None,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::L1 => "L1",
            Level::L2 => "L2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Selector {
    Labeled(LabeledAlcove),
    Between(LabeledAlcove, LabeledAlcove),
    Floor([i64; 6]),
    Sig(Signature),
    Special(Weight),
    Weight(Weight),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LedgerError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("entry {id}: cannot resolve `{selector}`: {reason}")]
    UnresolvableSelector {
        id: String,
        selector: String,
        reason: String,
    },
    #[error("entry {id}: `{selector}` lies outside the closed p^2 region for p={p}")]
    OutOfP2 {
        id: String,
        selector: String,
        p: i64,
    },
    #[error("entry id {0} is used twice")]
    DuplicateId(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub id: String,
    pub selector_text: String,
    pub selector: Selector,
    pub degree: u8,
    pub status: Status,
    pub level: Level,
    pub citation: String,
    /// Picture the record was transcribed from, if any.
    pub figure: Option<String>,
}

fn strip_braces(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .unwrap_or(s)
        .trim()
}

/// Splits `X_{sub}^{sup}` / `X^{sup}_{sub}` / `X_sub^sup` after the head letter.
fn sub_sup(rest: &str) -> Option<(String, Option<String>)> {
    let mut sub = None;
    let mut sup = None;
    let mut s = rest.trim();
    while !s.is_empty() {
        let (mark, tail) = s.split_at(1);
        let (body, after) = take_group(tail)?;
        match mark {
            "_" if sub.is_none() => sub = Some(body),
            "^" if sup.is_none() => sup = Some(body),
            _ => return None,
        }
        s = after.trim_start();
    }
    Some((sub?, sup))
}

/// Reads one script group: a braced block or a run up to the next `_`/`^`.
fn take_group(s: &str) -> Option<(String, &str)> {
    let s = s.trim_start();
    if let Some(inner) = s.strip_prefix('{') {
        let mut depth = 1;
        for (i, c) in inner.char_indices() {
            match c {
                '{' => depth += 1,
                '}' => {
                    depth -= 1;
                    if depth == 0 {
                        return Some((inner[..i].trim().to_string(), &inner[i + 1..]));
                    }
                }
                _ => {}
            }
        }
        None
    } else {
        let end = s.find(['_', '^']).unwrap_or(s.len());
        if end == 0 {
            return None;
        }
        Some((s[..end].trim().to_string(), &s[end..]))
    }
}

fn parse_chamber(s: Option<&str>) -> Result<WeylElem, String> {
    match s {
        None => Ok(WeylElem::E),
        Some(t) => {
            let t: String = t.chars().filter(|c| !c.is_whitespace()).collect();
            WeylElem::parse(&t).ok_or_else(|| format!("unknown chamber `{t}`"))
        }
    }
}

fn parse_index(s: &str) -> Result<u32, String> {
    strip_braces(s)
        .parse()
        .map_err(|_| format!("bad alcove number `{s}`"))
}

fn parse_labeled(s: &str) -> Result<LabeledAlcove, String> {
    let rest = s
        .trim()
        .strip_prefix('A')
        .ok_or_else(|| format!("expected A_i in `{s}`"))?;
    let (sub, sup) = sub_sup(rest).ok_or_else(|| format!("bad scripts in `{s}`"))?;
    Ok(LabeledAlcove {
        chamber: parse_chamber(sup.as_deref())?,
        index: parse_index(&sub)?,
    })
}

fn parse_ints<const N: usize>(s: &str) -> Result<[i64; N], String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("bad integer list `{s}`"))?;
    v.try_into()
        .map_err(|_| format!("expected {N} integers in `{s}`"))
}

impl Selector {
    pub fn parse(text: &str) -> Result<Selector, String> {
        let t = text.trim();
        if let Some((head, args)) = t.split_once('(') {
            let args = args.strip_suffix(')').ok_or("unbalanced parentheses")?;
            return match head.trim() {
                "alcove" => Ok(Selector::Floor(parse_ints::<6>(args)?)),
                "facette" => Ok(Selector::Sig(parse_ints::<6>(args)?)),
                "special" => {
                    let [a, b] = parse_ints::<2>(args)?;
                    Ok(Selector::Special(Weight::new(a, b)))
                }
                "weight" => {
                    let [a, b] = parse_ints::<2>(args)?;
                    Ok(Selector::Weight(Weight::new(a, b)))
                }
                h => Err(format!("unknown selector kind `{h}`")),
            };
        }
        if t.starts_with('A') {
            return parse_labeled(t).map(Selector::Labeled);
        }
        let rest = t
            .strip_prefix('F')
            .ok_or_else(|| format!("unknown selector `{t}`"))?;
        let (sub, sup) = sub_sup(rest).ok_or_else(|| format!("bad scripts in `{t}`"))?;
        let (l, r) = sub.split_once('/').ok_or("wall selector needs `i/j`")?;
        if l.trim_start().starts_with('A') {
            if sup.is_some() {
                return Err("wall between labeled alcoves takes no chamber".into());
            }
            return Ok(Selector::Between(parse_labeled(l)?, parse_labeled(r)?));
        }
        let v = parse_chamber(sup.as_deref())?;
        Ok(Selector::Between(
            LabeledAlcove {
                chamber: v,
                index: parse_index(l)?,
            },
            LabeledAlcove {
                chamber: v,
                index: parse_index(r)?,
            },
        ))
    }

    /// Signature of the selected facette. Only `weight(..)` depends on `p`.
    pub fn resolve(&self, labels: &LabelTable, p: i64) -> Result<Signature, String> {
        let lab = |l: &LabeledAlcove| {
            labels
                .signature(l.index, l.chamber)
                .ok_or_else(|| format!("no alcove numbered {}", l.index))
        };
        let sig = match self {
            Selector::Labeled(l) => lab(l)?,
            Selector::Between(a, b) => {
                common_wall(&lab(a)?, &lab(b)?)
                    .ok_or("the two alcoves are not adjacent")?
                    .0
            }
            Selector::Floor(n) => AlcoveId::new(*n).signature(),
            Selector::Sig(k) => *k,
            Selector::Special(u) => pairing_vector(*u).map(|x| 2 * x),
            Selector::Weight(w) => signature_of(*w, p).map_err(|e| e.to_string())?,
        };
        if !is_realizable(&sig) {
            return Err("not a facette".into());
        }
        Ok(sig)
    }
}

impl LedgerEntry {
    /// Resolves the selector at `p` and checks that it lies in `P̄_2`.
    pub fn resolve(&self, labels: &LabelTable, p: i64) -> Result<LedgerFact, LedgerError> {
        let sig = self.selector.resolve(labels, p).map_err(|reason| {
            LedgerError::UnresolvableSelector {
                id: self.id.clone(),
                selector: self.selector_text.clone(),
                reason,
            }
        })?;
        if !sig_in_closed_ball(&sig, p) {
            return Err(LedgerError::OutOfP2 {
                id: self.id.clone(),
                selector: self.selector_text.clone(),
                p,
            });
        }
        Ok(LedgerFact {
            id: self.id.clone(),
            facette: FacetteKey::from_signature(&sig, p),
            degree: self.degree,
            status: self.status,
            citation: self.citation.clone(),
        })
    }

    pub fn kind(&self, labels: &LabelTable, p: i64) -> Option<FacetteKind> {
        self.selector.resolve(labels, p).ok().map(|s| kind_of(&s))
    }
}

/// A picture: a rectangle in `u = (λ+ρ)/p` coordinates, a set of chambers and
/// the degrees it shows. Undecorated alcoves in it are implied vanishing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureWindow {
    pub name: String,
    pub degrees: Vec<u8>,
    /// `None` means every chamber.
    pub chambers: Option<Vec<WeylElem>>,
    /// Bounds on `⟨u, α∨⟩`.
    pub a: (i64, i64),
    /// Bounds on `⟨u, (3α+2β)∨⟩`.
    pub c: (i64, i64),
}

fn parse_range(s: &str) -> Option<(i64, i64)> {
    let (lo, hi) = s.split_once("..")?;
    let r = (lo.trim().parse().ok()?, hi.trim().parse().ok()?);
    (r.0 <= r.1).then_some(r)
}

impl FigureWindow {
    /// Parses the tail of an `@window` line.
    pub fn parse(text: &str) -> Result<FigureWindow, String> {
        let mut it = text.split_whitespace();
        let name = it.next().ok_or("window without a name")?.to_string();
        let (mut degrees, mut chambers, mut a, mut c) = (None, None, None, None);
        for f in it {
            let (k, v) = f
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{f}`"))?;
            match k {
                "degrees" => {
                    let d: Option<Vec<u8>> = v
                        .split(',')
                        .map(|t| t.parse().ok().filter(|d| *d <= MAX_DEGREE))
                        .collect();
                    degrees = Some(d.ok_or_else(|| format!("bad degrees `{v}`"))?);
                }
                "chambers" if v == "*" => chambers = Some(None),
                "chambers" => {
                    let cs: Option<Vec<WeylElem>> = v.split(',').map(WeylElem::parse).collect();
                    chambers = Some(Some(cs.ok_or_else(|| format!("bad chambers `{v}`"))?));
                }
                "a" => a = Some(parse_range(v).ok_or_else(|| format!("bad range `{v}`"))?),
                "c" => c = Some(parse_range(v).ok_or_else(|| format!("bad range `{v}`"))?),
                _ => return Err(format!("unknown window field `{k}`")),
            }
        }
        Ok(FigureWindow {
            name,
            degrees: degrees.ok_or("window needs degrees=")?,
            chambers: chambers.ok_or("window needs chambers=")?,
            a: a.ok_or("window needs a=")?,
            c: c.ok_or("window needs c=")?,
        })
    }

    /// Whether the picture shows the alcove `sig` (closure inside the
    /// rectangle, regular chamber among the listed ones).
    pub fn shows(&self, sig: &Signature) -> bool {
        if kind_of(sig) != FacetteKind::Alcove {
            return false;
        }
        let Some(v) = chamber_of_signature(sig).elem() else {
            return false;
        };
        if self.chambers.as_ref().is_some_and(|cs| !cs.contains(&v)) {
            return false;
        }
        closure_vertices(sig).iter().all(|pt| {
            let c = pt.a + 2 * pt.b;
            self.a.0 * pt.d <= pt.a
                && pt.a <= self.a.1 * pt.d
                && self.c.0 * pt.d <= c
                && c <= self.c.1 * pt.d
        })
    }

    /// Degrees at which an undecorated alcove of chamber `v` reads as zero.
    pub fn implied_degrees(&self, v: WeylElem) -> impl Iterator<Item = u8> + '_ {
        let bott = v.length() as u8;
        self.degrees.iter().copied().filter(move |d| *d != bott)
    }
}

/// One cell of a picture: a decoration or an implied vanishing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureCell {
    pub sig: Signature,
    pub degree: u8,
    pub status: Status,
    pub decorated: bool,
}

/// Ledger records plus picture windows and withheld ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ledger {
    pub entries: Vec<LedgerEntry>,
    pub windows: Vec<FigureWindow>,
    /// Ids named by `@contested`: kept for reference, never injected.
    pub contested: BTreeSet<String>,
}

fn unresolvable(e: &LedgerEntry, reason: String) -> LedgerError {
    LedgerError::UnresolvableSelector {
        id: e.id.clone(),
        selector: e.selector_text.clone(),
        reason,
    }
}

impl Ledger {
    /// Parses one file, keeping records at or below `level`. Selectors are
    /// checked for syntax and, except for `weight(..)`, for resolvability.
    ///
    /// Directives: `@window NAME ...` opens a picture (see [`FigureWindow`]);
    /// records after it belong to that picture. `@contested ID ...` withholds
    /// records from injection.
    pub fn parse(text: &str, level: Level, labels: &LabelTable) -> Result<Ledger, LedgerError> {
        let mut out = Ledger::default();
        let mut ids = BTreeSet::new();
        let mut figure: Option<String> = None;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| LedgerError::Parse { line: no + 1, msg };
            if let Some(rest) = line.strip_prefix("@window") {
                let w = FigureWindow::parse(rest).map_err(err)?;
                if out.windows.iter().any(|x| x.name == w.name) {
                    return Err(err(format!("window `{}` declared twice", w.name)));
                }
                figure = Some(w.name.clone());
                out.windows.push(w);
                continue;
            }
            if let Some(rest) = line.strip_prefix("@contested") {
                out.contested
                    .extend(rest.split_whitespace().map(str::to_string));
                continue;
            }
            if line.starts_with('@') {
                return Err(err(format!("unknown directive `{line}`")));
            }
            let fields: Vec<&str> = line.splitn(6, '|').map(str::trim).collect();
            let [id, sel, deg, st, lvl, cite] = fields[..] else {
                return Err(err("expected 6 fields separated by `|`".into()));
            };
            if id.is_empty() {
                return Err(err("empty id".into()));
            }
            let degree: u8 = deg
                .parse()
                .ok()
                .filter(|d| *d <= MAX_DEGREE)
                .ok_or_else(|| err(format!("bad degree `{deg}`")))?;
            let status = match Status::parse(st) {
                Some(s) if s.is_decided() => s,
                _ => return Err(err(format!("bad status `{st}`"))),
            };
            let lv = Level::parse(lvl).ok_or_else(|| err(format!("bad level `{lvl}`")))?;
            let selector =
                Selector::parse(sel).map_err(|reason| LedgerError::UnresolvableSelector {
                    id: id.to_string(),
                    selector: sel.to_string(),
                    reason,
                })?;
            if !ids.insert(id.to_string()) {
                return Err(LedgerError::DuplicateId(id.to_string()));
            }
            let entry = LedgerEntry {
                id: id.to_string(),
                selector_text: sel.to_string(),
                selector,
                degree,
                status,
                level: lv,
                citation: cite.to_string(),
                figure: figure.clone(),
            };
            if !matches!(entry.selector, Selector::Weight(_)) {
                entry
                    .selector
                    .resolve(labels, 7)
                    .map_err(|r| unresolvable(&entry, r))?;
            }
            if lv <= level {
                out.entries.push(entry);
            }
        }
        if level < Level::L2 {
            out.windows.clear();
        }
        Ok(out)
    }

    pub fn merge(&mut self, other: Ledger) -> Result<(), LedgerError> {
        for e in &other.entries {
            if self.entries.iter().any(|x| x.id == e.id) {
                return Err(LedgerError::DuplicateId(e.id.clone()));
            }
        }
        self.entries.extend(other.entries);
        self.windows.extend(other.windows);
        self.contested.extend(other.contested);
        Ok(())
    }

    /// The shipped files up to `level`.
    pub fn builtin(level: Level, labels: &LabelTable) -> Ledger {
        let mut l = Ledger::parse(LEDGER_L1, level, labels).expect("shipped L1 file is valid");
        l.merge(Ledger::parse(LEDGER_L2, level, labels).expect("shipped L2 file is valid"))
            .expect("shipped ids are unique");
        l
    }

    /// Records that will be injected.
    pub fn active(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries
            .iter()
            .filter(|e| !self.contested.contains(&e.id))
    }

    pub fn withheld(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries
            .iter()
            .filter(|e| self.contested.contains(&e.id))
    }

    pub fn window(&self, name: &str) -> Option<&FigureWindow> {
        self.windows.iter().find(|w| w.name == name)
    }

    /// Every cell a picture asserts inside `P̄_2` at `p`: its decorations
    /// plus the implied zeros.
    pub fn figure_cells(
        &self,
        name: &str,
        labels: &LabelTable,
        p: i64,
    ) -> Result<Vec<FigureCell>, LedgerError> {
        let Some(w) = self.window(name) else {
            return Ok(Vec::new());
        };
        let mut cells = BTreeMap::new();
        for e in self
            .entries
            .iter()
            .filter(|e| e.figure.as_deref() == Some(name))
        {
            let sig = e
                .selector
                .resolve(labels, p)
                .map_err(|r| unresolvable(e, r))?;
            if sig_in_closed_ball(&sig, p) {
                cells.insert((sig, e.degree), (e.status, true));
            }
        }
        for sig in window_signatures(&Window::ball(p)) {
            if !w.shows(&sig) {
                continue;
            }
            let v = chamber_of_signature(&sig)
                .elem()
                .expect("alcoves are regular");
            for d in w.implied_degrees(v) {
                cells.entry((sig, d)).or_insert((Status::Zero, false));
            }
        }
        Ok(cells
            .into_iter()
            .map(|((sig, degree), (status, decorated))| FigureCell {
                sig,
                degree,
                status,
                decorated,
            })
            .collect())
    }

    /// Facts to inject at `p`. Records outside `P̄_2` are an error, except
    /// picture records, which are clipped.
    pub fn facts(&self, labels: &LabelTable, p: i64) -> Result<Vec<LedgerFact>, LedgerError> {
        let mut out = Vec::new();
        for e in self.active() {
            match e.resolve(labels, p) {
                Ok(f) => out.push(f),
                Err(LedgerError::OutOfP2 { .. }) if e.figure.is_some() => {}
                Err(x) => return Err(x),
            }
        }
        for w in &self.windows {
            for c in self
                .figure_cells(&w.name, labels, p)?
                .into_iter()
                .filter(|c| !c.decorated)
            {
                out.push(LedgerFact {
                    id: format!(
                        "{}:{}@{}",
                        w.name,
                        AlcoveId::new(c.sig.map(|k| (k - 1) / 2)),
                        c.degree
                    ),
                    facette: FacetteKey::from_signature(&c.sig, p),
                    degree: c.degree,
                    status: c.status,
                    citation: w.name.clone(),
                });
            }
        }
        Ok(out)
    }
}

/// Resolves entries at `p`.
pub fn resolve_all(
    entries: &[LedgerEntry],
    labels: &LabelTable,
    p: i64,
) -> Result<Vec<LedgerFact>, LedgerError> {
    entries.iter().map(|e| e.resolve(labels, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_entries(
        text: &str,
        level: Level,
        labels: &LabelTable,
    ) -> Result<Vec<LedgerEntry>, LedgerError> {
        Ledger::parse(text, level, labels).map(|l| l.entries)
    }

    fn lab(index: u32, v: WeylElem) -> LabeledAlcove {
        LabeledAlcove { chamber: v, index }
    }

    #[test]
    fn selector_forms() {
        let s = lab(34, WeylElem::S);
        for t in ["A_34^s", "A_{34}^{s}", "A^s_{34}", "A^{s}_34"] {
            assert_eq!(Selector::parse(t), Ok(Selector::Labeled(s)), "{t}");
        }
        assert_eq!(
            Selector::parse("A_3"),
            Ok(Selector::Labeled(lab(3, WeylElem::E)))
        );
        assert_eq!(
            Selector::parse("F_{22/25}^x"),
            Ok(Selector::Between(
                lab(22, WeylElem::X),
                lab(25, WeylElem::X)
            ))
        );
        assert_eq!(
            Selector::parse("F^z_{14/12}"),
            Selector::parse("F_{14/12}^{z}")
        );
        assert_eq!(
            Selector::parse("F_{A_4^w/A_4^{tz}}"),
            Ok(Selector::Between(lab(4, WeylElem::W), lab(4, WeylElem::TZ)))
        );
        assert_eq!(
            Selector::parse("F_{A_{10}^z/A_{10}^{t w}}"),
            Ok(Selector::Between(
                lab(10, WeylElem::Z),
                lab(10, WeylElem::X)
            ))
        );
        assert_eq!(
            Selector::parse("special(1,-2)"),
            Ok(Selector::Special(Weight::new(1, -2)))
        );
        assert!(Selector::parse("A_99^q").is_err());
        assert!(Selector::parse("B_1").is_err());
        assert!(Selector::parse("F_{1}^s").is_err());
        assert!(Selector::parse("alcove(1,2)").is_err());
    }

    #[test]
    fn resolution_is_p_free() {
        let labels = LabelTable::builtin();
        let sel = Selector::parse("A_34^s").unwrap();
        let sig = sel.resolve(&labels, 7).unwrap();
        for p in [7, 11, 13] {
            assert_eq!(sel.resolve(&labels, p).unwrap(), sig);
            let e = LedgerEntry {
                id: "x".into(),
                selector_text: "A_34^s".into(),
                selector: sel.clone(),
                degree: 2,
                status: Status::Zero,
                level: Level::L1,
                citation: String::new(),
                figure: None,
            };
            let f = e.resolve(&labels, p).unwrap();
            assert_eq!(
                f.facette,
                FacetteKey::from_signature(&labels.signature(34, WeylElem::S).unwrap(), p)
            );
        }
    }

    #[test]
    fn resolution_errors() {
        let labels = LabelTable::builtin();
        let bad = "q1 | A_99^q | 2 | Z | L1 | none";
        assert!(matches!(
            parse_entries(bad, Level::L2, &labels),
            Err(LedgerError::UnresolvableSelector { .. })
        ));
        let far = "q2 | A_36 | 2 | Z | L1 | none";
        assert!(matches!(
            parse_entries(far, Level::L2, &labels),
            Err(LedgerError::UnresolvableSelector { .. })
        ));
        let apart = "q3 | F_{1/7}^s | 2 | Z | L1 | none";
        assert!(matches!(
            parse_entries(apart, Level::L2, &labels),
            Err(LedgerError::UnresolvableSelector { .. })
        ));
        let out = parse_entries(
            "q4 | alcove(20,0,20,40,20,20) | 2 | Z | L1 | none",
            Level::L2,
            &labels,
        )
        .unwrap();
        assert!(matches!(
            out[0].resolve(&labels, 7),
            Err(LedgerError::OutOfP2 { .. })
        ));
        assert!(out[0].resolve(&labels, 43).is_ok());
        assert!(matches!(
            parse_entries("q5 | A_1 | 7 | Z | L1 | none", Level::L2, &labels),
            Err(LedgerError::Parse { .. })
        ));
        assert!(matches!(
            parse_entries(
                "q6 | A_1 | 0 | NZ | L1 | a\nq6 | A_1 | 0 | NZ | L1 | b",
                Level::L2,
                &labels
            ),
            Err(LedgerError::DuplicateId(_))
        ));
    }

    #[test]
    fn directives() {
        let labels = LabelTable::builtin();
        let text = "@window pic degrees=2,4 chambers=s,st a=-3..0 c=0..4\n\
                    d1 | alcove(-1,0,0,0,0,0) | 2 | NZ | L2 | pic\n\
                    @contested d1\n";
        let l = Ledger::parse(text, Level::L2, &labels).unwrap();
        assert_eq!(l.windows.len(), 1);
        assert_eq!(l.entries[0].figure.as_deref(), Some("pic"));
        assert_eq!(l.active().count(), 0);
        assert_eq!(l.withheld().count(), 1);
        let w = &l.windows[0];
        assert_eq!(w.chambers, Some(alloc::vec![WeylElem::S, WeylElem::X]));
        assert_eq!(
            w.implied_degrees(WeylElem::S).collect::<Vec<_>>(),
            alloc::vec![2, 4]
        );
        assert_eq!(
            w.implied_degrees(WeylElem::X).collect::<Vec<_>>(),
            alloc::vec![4]
        );
        assert!(Ledger::parse(
            "@window q degrees=9 chambers=* a=0..1 c=0..1",
            Level::L2,
            &labels
        )
        .is_err());
        assert!(Ledger::parse(
            "@window q degrees=1 chambers=* a=2..1 c=0..1",
            Level::L2,
            &labels
        )
        .is_err());
        assert!(Ledger::parse("@frame q", Level::L2, &labels).is_err());
        // windows are an L2 notion
        assert!(Ledger::parse(text, Level::L1, &labels)
            .unwrap()
            .windows
            .is_empty());
    }

    #[test]
    fn window_geometry() {
        let w = FigureWindow::parse("q degrees=1 chambers=* a=0..1 c=0..1").unwrap();
        // A_1 has vertices 0, ω_α/2, ω_β/3 in u-coordinates
        assert!(w.shows(&AlcoveId::A1.signature()));
        let narrow = FigureWindow::parse("q degrees=1 chambers=* a=0..0 c=0..1").unwrap();
        assert!(!narrow.shows(&AlcoveId::A1.signature()));
        let other = FigureWindow::parse("q degrees=1 chambers=s a=0..1 c=0..1").unwrap();
        assert!(!other.shows(&AlcoveId::A1.signature()));
    }

    #[test]
    fn shipped_files_parse_and_resolve() {
        let labels = LabelTable::builtin();
        let l1 = Ledger::builtin(Level::L1, &labels);
        let l2 = Ledger::builtin(Level::L2, &labels);
        assert!(l1
            .entries
            .iter()
            .all(|e| e.level == Level::L1 && e.figure.is_none()));
        assert!(l1.windows.is_empty());
        assert!(l2.entries.len() > l1.entries.len());
        assert!(l2
            .entries
            .iter()
            .filter(|e| e.level == Level::L2)
            .all(|e| e.figure.is_some()));
        assert!(!l2.windows.is_empty());
        for id in &l1.contested {
            assert!(l1.entries.iter().any(|e| &e.id == id), "{id}");
        }
        for p in [7, 11, 13, 17, 19] {
            resolve_all(&l1.entries, &labels, p).unwrap();
            l2.facts(&labels, p).unwrap();
        }
    }
}

//! Decorated alcove pictures as SVG or plain text.
//!
//! Points are drawn in `u = (λ+ρ)/p` coordinates, mapped to the plane with
//! α at 0° (length √2) and β at 150° (length √6). Alcoves carry the degrees
//! `i` where `H^i ≠ 0`, by default only those beyond the Bott degree.

use std::collections::BTreeSet;
use std::fmt::Write;

use g2coh_core::engine::bott_profile;
use g2coh_core::facette::{
    alcove_walls, chamber_of_signature, closure_vertices, in_closed_chamber, kind_of, FacetteKey,
    FacetteKind, RatPoint, Signature,
};
use g2coh_core::kb::{Status, StatusTable};
use g2coh_core::labels::LabelTable;
use g2coh_core::report::describe;
use g2coh_core::{WeylElem, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Policy {
    /// Degrees where `H^i ≠ 0` although the Bott profile has `H^i = 0`.
    #[default]
    ExtrasOnly,
    /// Every degree with `H^i ≠ 0`.
    FullProfile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub degrees: BTreeSet<u8>,
    /// Facettes drawn; `None` means `P̄_2` of the table.
    pub region: Option<Window>,
    /// Keep facettes in the closure of one of these chambers.
    pub chambers: Option<Vec<WeylElem>>,
    pub format: Format,
    pub policy: Policy,
}

impl RenderSpec {
    pub fn new(degrees: impl IntoIterator<Item = u8>, format: Format) -> Self {
        RenderSpec {
            degrees: degrees.into_iter().collect(),
            region: None,
            chambers: None,
            format,
            policy: Policy::default(),
        }
    }
}

/// One decorated facette.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoration {
    pub sig: Signature,
    pub key: FacetteKey,
    pub name: String,
    pub degrees: Vec<u8>,
}

fn region(table: &StatusTable, spec: &RenderSpec) -> Window {
    spec.region.unwrap_or(Window::ball(table.p))
}

fn shown(spec: &RenderSpec, sig: &Signature) -> bool {
    spec.chambers
        .as_ref()
        .is_none_or(|vs| vs.iter().any(|v| in_closed_chamber(*v, sig)))
}

/// Decorated facettes in canonical order.
pub fn decorations(table: &StatusTable, labels: &LabelTable, spec: &RenderSpec) -> Vec<Decoration> {
    let window = region(table, spec);
    let mut out = Vec::new();
    for (f, sig) in table.index.sigs.iter().enumerate() {
        if !window.contains(sig) || !shown(spec, sig) {
            continue;
        }
        let bott = bott_profile(chamber_of_signature(sig));
        let degrees: Vec<u8> = spec
            .degrees
            .iter()
            .copied()
            .filter(|&d| (d as usize) < bott.len())
            .filter(|&d| table.get(StatusTable::cell_id(f, d)) == Status::NonZero)
            .filter(|&d| spec.policy == Policy::FullProfile || bott[d as usize] != Status::NonZero)
            .collect();
        if !degrees.is_empty() {
            out.push(Decoration {
                sig: *sig,
                key: table.index.keys[f],
                name: describe(sig, table.p, labels),
                degrees,
            });
        }
    }
    out
}

fn digits(ds: &[u8]) -> String {
    ds.iter().map(|d| char::from(b'0' + d)).collect()
}

pub fn render(table: &StatusTable, labels: &LabelTable, spec: &RenderSpec) -> String {
    let decos = decorations(table, labels, spec);
    match spec.format {
        Format::Text => text(table, spec, &decos),
        Format::Svg => svg(table, spec, &decos),
    }
}

fn text(table: &StatusTable, spec: &RenderSpec, decos: &[Decoration]) -> String {
    let mut s = String::new();
    let policy = match spec.policy {
        Policy::ExtrasOnly => "extras",
        Policy::FullProfile => "full",
    };
    let _ = writeln!(
        s,
        "# p={} mode={} degrees={} policy={policy} decorated={}",
        table.p,
        table.mode.name(),
        digits(&spec.degrees.iter().copied().collect::<Vec<_>>()),
        decos.len()
    );
    for d in decos {
        let _ = writeln!(s, "{}\t{}\t{}", d.name, d.key, digits(&d.degrees));
    }
    s
}

const SCALE: f64 = 40.0;

/// Plane position of a point of `u`-space, y pointing down.
fn plane(pt: &RatPoint) -> (f64, f64) {
    let (a, b) = (pt.a as f64 / pt.d as f64, pt.b as f64 / pt.d as f64);
    // ω_α = 2α + β and ω_β = 3α + 2β.
    let (x_alpha, x_beta) = (2.0 * a + 3.0 * b, a + 2.0 * b);
    let r2 = std::f64::consts::SQRT_2;
    let r6 = 6f64.sqrt();
    let x = x_alpha * r2 - x_beta * 1.5 * r2;
    let y = x_beta * r6 / 2.0;
    (x * SCALE, -y * SCALE)
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn centroid(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    (
        pts.iter().map(|p| p.0).sum::<f64>() / n,
        pts.iter().map(|p| p.1).sum::<f64>() / n,
    )
}

fn svg(table: &StatusTable, spec: &RenderSpec, decos: &[Decoration]) -> String {
    let window = region(table, spec);
    let alcoves: Vec<&Signature> = table
        .index
        .sigs
        .iter()
        .filter(|s| kind_of(s) == FacetteKind::Alcove && window.contains(s) && shown(spec, s))
        .collect();
    let tri = |sig: &Signature| closure_vertices(sig).iter().map(plane).collect::<Vec<_>>();

    let (mut x0, mut y0, mut x1, mut y1) = (0f64, 0f64, 0f64, 0f64);
    for s in &alcoves {
        for (x, y) in tri(s) {
            (x0, y0, x1, y1) = (x0.min(x), y0.min(y), x1.max(x), y1.max(y));
        }
    }
    let pad = SCALE / 2.0;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(x0 - pad),
        num(y0 - pad),
        num(x1 - x0 + 2.0 * pad),
        num(y1 - y0 + 2.0 * pad)
    );
    let _ = writeln!(
        out,
        r##"<g class="alcoves" fill="none" stroke="#999" stroke-width="0.5">"##
    );
    for s in &alcoves {
        let pts: Vec<String> = tri(s)
            .iter()
            .map(|(x, y)| format!("{},{}", num(*x), num(*y)))
            .collect();
        let _ = writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(out, "</g>");

    // Chamber walls: alcove edges on level-0 hyperplanes.
    let mut bold = BTreeSet::new();
    for s in &alcoves {
        for w in alcove_walls(s) {
            if w.level == 0 {
                bold.insert(w.wall);
            }
        }
    }
    let _ = writeln!(
        out,
        r##"<g class="chamber-walls" stroke="#000" stroke-width="2.5">"##
    );
    for w in &bold {
        let v = closure_vertices(w);
        let (a, b) = (plane(&v[0]), plane(&v[1]));
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1)
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(
        out,
        r#"<g class="decorations" font-family="sans-serif" font-size="11" text-anchor="middle">"#
    );
    for d in decos {
        let pts: Vec<(f64, f64)> = closure_vertices(&d.sig).iter().map(plane).collect();
        let (cx, cy) = centroid(&pts);
        let label = digits(&d.degrees);
        match kind_of(&d.sig) {
            FacetteKind::Alcove => {
                let _ = writeln!(
                    out,
                    r#"<text data-facette="{}" x="{}" y="{}" dy="4">{label}</text>"#,
                    d.key,
                    num(cx),
                    num(cy)
                );
            }
            FacetteKind::Wall => {
                let _ = writeln!(
                    out,
                    r##"<g data-facette="{}"><line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c00" stroke-width="2"/><text x="{}" y="{}" dy="4" fill="#c00" font-size="8">{label}</text></g>"##,
                    d.key,
                    num(pts[0].0),
                    num(pts[0].1),
                    num(pts[1].0),
                    num(pts[1].1),
                    num(cx),
                    num(cy)
                );
            }
            FacetteKind::SpecialPoint => {
                let _ = writeln!(
                    out,
                    r##"<g data-facette="{}"><circle cx="{}" cy="{}" r="3" fill="#00c"/><text x="{}" y="{}" dy="-5" fill="#00c" font-size="8">{label}</text></g>"##,
                    d.key,
                    num(cx),
                    num(cy),
                    num(cx),
                    num(cy)
                );
            }
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

//! Facettes of the `p`-dilated affine Weyl group acting by the dot action.
//!
//! Geometry is done in scaled coordinates `u = (λ+ρ)/p`, where the reflecting
//! hyperplanes are `⟨u, γ∨⟩ = m` and special points are the lattice points.
//! A facette is encoded by its [`Signature`]: for each positive root, `2n+1`
//! when `n < ⟨u, γ∨⟩ < n+1` and `2m` when `⟨u, γ∨⟩ = m`. The signature does not
//! depend on `p`, so most of this module is pure combinatorics.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::lattice::{pairing, pairing_vector, PositiveRoot, Weight, COROOTS, RHO};
use crate::weyl::{Chamber, WeylElem};

/// Doubled position code, one entry per positive root.
pub type Signature = [i64; 6];

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("weight {weight} lies on several hyperplanes but is not special for p={p}")]
    InvalidVertex { weight: Weight, p: i64 },
    #[error("alcove chain search left the window")]
    WindowExceeded,
    #[error("signature {0:?} is not realized by any facette")]
    NotRealizable(Signature),
}

/// Floor vector `n_γ = ⌊⟨λ+ρ, γ∨⟩ / p⌋` of an alcove.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlcoveId {
    pub n: [i64; 6],
}

impl AlcoveId {
    pub const fn new(n: [i64; 6]) -> Self {
        AlcoveId { n }
    }

    /// The bottom dominant alcove, containing `0`.
    pub const A1: AlcoveId = AlcoveId { n: [0; 6] };

    pub fn signature(&self) -> Signature {
        self.n.map(|x| 2 * x + 1)
    }

    /// The alcove with signature `sig`, which must have only odd entries.
    pub fn from_signature(sig: &Signature) -> Self {
        debug_assert!(sig.iter().all(|k| k % 2 != 0), "not an alcove: {sig:?}");
        AlcoveId {
            n: sig.map(|k| (k - 1).div_euclid(2)),
        }
    }
}

impl fmt::Display for AlcoveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = &self.n;
        write!(f, "[{},{},{},{},{},{}]", n[0], n[1], n[2], n[3], n[4], n[5])
    }
}

/// A reflecting hyperplane `⟨x+ρ, γ∨⟩ = level·p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub root: PositiveRoot,
    pub level: i64,
}

/// A wall, with `upper` on the side `⟨x+ρ, γ∨⟩ > level·p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WallId {
    pub lower: AlcoveId,
    pub upper: AlcoveId,
    pub hyperplane: Hyperplane,
}

impl WallId {
    pub fn signature(&self) -> Signature {
        let mut s = self.lower.signature();
        s[self.hyperplane.root.index()] = 2 * self.hyperplane.level;
        s
    }

    fn from_signature(sig: &Signature, root: PositiveRoot) -> Self {
        let level = sig[root.index()] / 2;
        let mut lo = *sig;
        lo[root.index()] = 2 * level - 1;
        let mut hi = *sig;
        hi[root.index()] = 2 * level + 1;
        WallId {
            lower: AlcoveId::from_signature(&lo),
            upper: AlcoveId::from_signature(&hi),
            hyperplane: Hyperplane { root, level },
        }
    }
}

/// Canonical identifier of a facette. For special points the weight is stored,
/// so that key is tied to a fixed `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FacetteKey {
    Alcove(AlcoveId),
    Wall(WallId),
    SpecialPoint(Weight),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FacetteKind {
    Alcove,
    Wall,
    SpecialPoint,
}

impl FacetteKey {
    pub fn kind(&self) -> FacetteKind {
        match self {
            FacetteKey::Alcove(_) => FacetteKind::Alcove,
            FacetteKey::Wall(_) => FacetteKind::Wall,
            FacetteKey::SpecialPoint(_) => FacetteKind::SpecialPoint,
        }
    }

    pub fn signature(&self, p: i64) -> Signature {
        match self {
            FacetteKey::Alcove(a) => a.signature(),
            FacetteKey::Wall(w) => w.signature(),
            FacetteKey::SpecialPoint(nu) => {
                let u = *nu + RHO;
                pairing_vector(Weight::new(u.a / p, u.b / p)).map(|x| 2 * x)
            }
        }
    }

    /// Builds the key of a signature without checking that it is realizable.
    pub fn from_signature(sig: &Signature, p: i64) -> FacetteKey {
        let even: Vec<usize> = (0..6).filter(|&i| sig[i] % 2 == 0).collect();
        match even.len() {
            0 => FacetteKey::Alcove(AlcoveId::from_signature(sig)),
            1 => FacetteKey::Wall(WallId::from_signature(sig, PositiveRoot::ALL[even[0]])),
            _ => {
                let u = Weight::new(sig[0] / 2, sig[1] / 2);
                FacetteKey::SpecialPoint(u * p - RHO)
            }
        }
    }
}

impl fmt::Display for FacetteKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FacetteKey::Alcove(a) => write!(f, "alcove{a}"),
            FacetteKey::Wall(w) => write!(
                f,
                "wall{}|{}@{}={}",
                w.lower, w.upper, w.hyperplane.root, w.hyperplane.level
            ),
            FacetteKey::SpecialPoint(nu) => write!(f, "special{nu}"),
        }
    }
}

pub fn kind_of(sig: &Signature) -> FacetteKind {
    match sig.iter().filter(|k| *k % 2 == 0).count() {
        0 => FacetteKind::Alcove,
        1 => FacetteKind::Wall,
        _ => FacetteKind::SpecialPoint,
    }
}

/// Signature of the facette containing `λ`.
pub fn signature_of(lambda: Weight, p: i64) -> Result<Signature, GeometryError> {
    let x = lambda + RHO;
    let pv = pairing_vector(x);
    let on = pv.iter().filter(|v| v.rem_euclid(p) == 0).count();
    if on >= 2 && (x.a % p != 0 || x.b % p != 0) {
        return Err(GeometryError::InvalidVertex { weight: lambda, p });
    }
    Ok(pv.map(|v| {
        if v.rem_euclid(p) == 0 {
            2 * (v / p)
        } else {
            2 * v.div_euclid(p) + 1
        }
    }))
}

/// The facette containing `λ`.
pub fn classify(lambda: Weight, p: i64) -> Result<FacetteKey, GeometryError> {
    Ok(FacetteKey::from_signature(&signature_of(lambda, p)?, p))
}

/// Floor vector of any weight (meaningful for alcove interiors).
pub fn floor_vector(lambda: Weight, p: i64) -> [i64; 6] {
    pairing_vector(lambda + RHO).map(|v| v.div_euclid(p))
}

/// Chamber of a facette, read off the signs of its code.
pub fn chamber_of_signature(sig: &Signature) -> Chamber {
    if sig.contains(&0) {
        return Chamber::Singular;
    }
    for v in WeylElem::all() {
        let d = dot_signature(v.inverse(), sig);
        if d[0] > 0 && d[1] > 0 {
            return Chamber::Regular(v);
        }
    }
    unreachable!("non-singular signature outside every chamber")
}

/// Signature of `w·F`.
pub fn dot_signature(w: WeylElem, sig: &Signature) -> Signature {
    let mut out = [0; 6];
    for g in PositiveRoot::ALL {
        let (d, e) = w.pull_coroot(g);
        out[g.index()] = e * sig[d.index()];
    }
    out
}

/// Signature of `ν + w(F − ν)` for the special point with scaled coordinate `u`.
pub fn dot_signature_about(w: WeylElem, u: Weight, sig: &Signature) -> Signature {
    let c = pairing_vector(u).map(|x| 2 * x);
    let mut out = [0; 6];
    for g in PositiveRoot::ALL {
        let (d, e) = w.pull_coroot(g);
        out[g.index()] = c[g.index()] + e * (sig[d.index()] - c[d.index()]);
    }
    out
}

/// Signature of `F + p·χ` (translation by `pχ` in weights).
pub fn translate_signature(sig: &Signature, chi: Weight) -> Signature {
    let c = pairing_vector(chi);
    core::array::from_fn(|i| sig[i] + 2 * c[i])
}

/// `G` lies in the closure of `F`.
pub fn in_closure(g: &Signature, f: &Signature) -> bool {
    (0..6).all(|i| {
        if f[i] % 2 == 0 {
            g[i] == f[i]
        } else {
            (g[i] - f[i]).abs() <= 1
        }
    })
}

/// A rational point `(a/d, b/d)` in scaled `ω`-coordinates, `d > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPoint {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

fn gcd(mut x: i64, mut y: i64) -> i64 {
    x = x.abs();
    y = y.abs();
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    x
}

impl RatPoint {
    fn new(a: i64, b: i64, d: i64) -> Self {
        let s = if d < 0 { -1 } else { 1 };
        let g = gcd(gcd(a, b), d).max(1);
        RatPoint {
            a: s * a / g,
            b: s * b / g,
            d: s * d / g,
        }
    }

    /// `d·⟨u, γ∨⟩`.
    fn scaled_pairing(&self, g: usize) -> i64 {
        COROOTS[g].0 * self.a + COROOTS[g].1 * self.b
    }

    pub fn is_integral(&self) -> bool {
        self.d == 1
    }
}

fn intersect(g1: usize, l1: i64, g2: usize, l2: i64) -> Option<RatPoint> {
    let (a1, b1) = COROOTS[g1];
    let (a2, b2) = COROOTS[g2];
    let det = a1 * b2 - b1 * a2;
    if det == 0 {
        return None;
    }
    Some(RatPoint::new(l1 * b2 - l2 * b1, a1 * l2 - a2 * l1, det))
}

fn bounds(k: i64) -> (i64, i64) {
    if k % 2 == 0 {
        (k / 2, k / 2)
    } else {
        let n = (k - 1).div_euclid(2);
        (n, n + 1)
    }
}

/// Vertices of the closure of the region described by `sig`, sorted.
pub fn closure_vertices(sig: &Signature) -> Vec<RatPoint> {
    let mut lines = Vec::with_capacity(12);
    for (g, k) in sig.iter().enumerate() {
        let (lo, hi) = bounds(*k);
        lines.push((g, lo));
        if hi != lo {
            lines.push((g, hi));
        }
    }
    let mut out = BTreeSet::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let Some(pt) = intersect(lines[i].0, lines[i].1, lines[j].0, lines[j].1) else {
                continue;
            };
            let ok = (0..6).all(|g| {
                let (lo, hi) = bounds(sig[g]);
                let v = pt.scaled_pairing(g);
                lo * pt.d <= v && v <= hi * pt.d
            });
            if ok {
                out.insert(pt);
            }
        }
    }
    out.into_iter().collect()
}

/// Whether some facette has exactly this signature.
pub fn is_realizable(sig: &Signature) -> bool {
    let v = closure_vertices(sig);
    match kind_of(sig) {
        FacetteKind::Alcove => v.len() >= 3,
        FacetteKind::Wall => v.len() == 2,
        FacetteKind::SpecialPoint => {
            v.len() == 1 && v[0].is_integral() && {
                let u = Weight::new(v[0].a, v[0].b);
                pairing_vector(u).map(|x| 2 * x) == *sig
            }
        }
    }
}

/// A wall of an alcove together with the alcove on its other side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlcoveWall {
    pub root: PositiveRoot,
    pub level: i64,
    /// The alcove lies on the greater side of this wall.
    pub alcove_is_upper: bool,
    pub wall: Signature,
    pub neighbor: Signature,
}

/// The three walls of an alcove given by its signature.
pub fn alcove_walls(sig: &Signature) -> Vec<AlcoveWall> {
    let verts = closure_vertices(sig);
    let mut out = Vec::with_capacity(3);
    for g in PositiveRoot::ALL {
        let i = g.index();
        let (lo, hi) = bounds(sig[i]);
        for (level, upper) in [(lo, true), (hi, false)] {
            let on = verts
                .iter()
                .filter(|v| v.scaled_pairing(i) == level * v.d)
                .count();
            if on >= 2 {
                let mut wall = *sig;
                wall[i] = 2 * level;
                let mut neighbor = *sig;
                neighbor[i] = if upper { sig[i] - 2 } else { sig[i] + 2 };
                out.push(AlcoveWall {
                    root: g,
                    level,
                    alcove_is_upper: upper,
                    wall,
                    neighbor,
                });
            }
        }
    }
    out
}

/// Special points (as scaled lattice points `u`) in the closure of a facette.
pub fn special_points_of(sig: &Signature) -> Vec<Weight> {
    closure_vertices(sig)
        .into_iter()
        .filter(|v| v.is_integral())
        .map(|v| Weight::new(v.a, v.b))
        .collect()
}

/// The three bounding walls of a realizable alcove.
pub fn walls_of(a: &AlcoveId) -> Vec<WallId> {
    alcove_walls(&a.signature())
        .into_iter()
        .map(|w| WallId::from_signature(&w.wall, w.root))
        .collect()
}

/// The alcove across the wall on hyperplane `h`, if `h` bounds `a`.
pub fn neighbor_across(a: &AlcoveId, h: Hyperplane) -> Option<AlcoveId> {
    alcove_walls(&a.signature())
        .into_iter()
        .find(|w| w.root == h.root && w.level == h.level)
        .map(|w| AlcoveId::from_signature(&w.neighbor))
}

/// Integral special points in the closure of `a`, as weights `ν` with `ν+ρ ∈ pX`.
pub fn special_vertices(a: &AlcoveId, p: i64) -> Vec<Weight> {
    special_points_of(&a.signature())
        .into_iter()
        .map(|u| u * p - RHO)
        .collect()
}

/// `|⟨λ+ρ, γ∨⟩| < pⁿ` for all positive roots.
pub fn in_pn(lambda: Weight, p: i64, n: u32) -> bool {
    let bound = p.checked_pow(n).expect("p^n overflow");
    pairing_vector(lambda + RHO).iter().all(|v| v.abs() < bound)
}

/// `±(λ − pʳ·χ)` has both coordinates in `[0, pʳ)`.
pub fn box_member(lambda: Weight, chi: Weight, r: u32, plus: bool, p: i64) -> bool {
    let q = p.checked_pow(r).expect("p^r overflow");
    let mut d = lambda - chi.dot_scale(q);
    if !plus {
        d = -d;
    }
    (0..q).contains(&d.a) && (0..q).contains(&d.b)
}

/// Scaled box index of a facette: the `u` with `F ⊂ pʳ(u−ρ) ± X_{pʳ}`.
///
/// Boxes are unions of facettes: in signature terms the `+` box of `u` at
/// scale `S = p^{r−1}` is `2S·u ≤ k ≤ 2S(u+1) − 1` on both simple roots.
pub fn box_index(sig: &Signature, scale: i64, plus: bool) -> Weight {
    let m = 2 * scale;
    let f = |k: i64| {
        if plus {
            k.div_euclid(m)
        } else {
            -((-k).div_euclid(m))
        }
    };
    Weight::new(f(sig[0]), f(sig[1]))
}

/// A bounded region of the plane: `|⟨λ+ρ, γ∨⟩| ≤ bound·p` for all `γ`,
/// optionally cut down to the closed dot-chamber of one Weyl element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Window {
    Empty,
    Region {
        bound: i64,
        chamber: Option<WeylElem>,
    },
}

impl Window {
    /// `P̄_2` enlarged by `rings` layers of alcoves.
    pub fn p2_plus(p: i64, rings: i64) -> Window {
        Window::Region {
            bound: p + rings,
            chamber: None,
        }
    }

    pub fn ball(bound: i64) -> Window {
        Window::Region {
            bound,
            chamber: None,
        }
    }

    pub fn bound(&self) -> Option<i64> {
        match self {
            Window::Empty => None,
            Window::Region { bound, .. } => Some(*bound),
        }
    }

    pub fn contains(&self, sig: &Signature) -> bool {
        match *self {
            Window::Empty => false,
            Window::Region { bound, chamber } => {
                if sig.iter().any(|k| k.abs() > 2 * bound) {
                    return false;
                }
                match chamber {
                    None => true,
                    Some(v) => in_closed_chamber(v, sig),
                }
            }
        }
    }
}

/// `F` lies in the closure of the chamber `v·C`.
pub fn in_closed_chamber(v: WeylElem, sig: &Signature) -> bool {
    let d = dot_signature(v.inverse(), sig);
    d[0] >= 0 && d[1] >= 0
}

/// Facette lies in `P̄_n` for the current `p` given as `scale = p^{n−1}`.
pub fn sig_in_closed_ball(sig: &Signature, scale: i64) -> bool {
    sig.iter().all(|k| k.abs() <= 2 * scale)
}

fn window_alcoves(window: &Window) -> Vec<Signature> {
    let Window::Region { bound, chamber } = *window else {
        return Vec::new();
    };
    if bound < 1 {
        return Vec::new();
    }
    let seed = match chamber {
        None => [1; 6],
        Some(v) => dot_signature(v, &[1; 6]),
    };
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(seed);
    queue.push_back(seed);
    while let Some(s) = queue.pop_front() {
        for w in alcove_walls(&s) {
            if window.contains(&w.neighbor) && seen.insert(w.neighbor) {
                queue.push_back(w.neighbor);
            }
        }
    }
    seen.into_iter().collect()
}

/// Signatures of every facette (alcove, wall, special point) inside the window.
pub fn window_signatures(window: &Window) -> Vec<Signature> {
    if let Window::Region { bound: 0, chamber } = *window {
        let s = [0; 6];
        return if chamber.is_none_or(|v| in_closed_chamber(v, &s)) {
            alloc::vec![s]
        } else {
            Vec::new()
        };
    }
    let mut all = BTreeSet::new();
    for a in window_alcoves(window) {
        for w in alcove_walls(&a) {
            if window.contains(&w.wall) {
                all.insert(w.wall);
            }
        }
        for u in special_points_of(&a) {
            let s = pairing_vector(u).map(|x| 2 * x);
            if window.contains(&s) {
                all.insert(s);
            }
        }
        all.insert(a);
    }
    all.into_iter().collect()
}

/// Every facette inside the window, in canonical key order.
pub fn enumerate_facettes(p: i64, window: &Window) -> Vec<FacetteKey> {
    let mut keys: Vec<FacetteKey> = window_signatures(window)
        .iter()
        .map(|s| FacetteKey::from_signature(s, p))
        .collect();
    keys.sort();
    keys
}

/// A representative integral weight of a realizable facette, chosen nearest
/// to the barycenter of its closure (ties broken by coordinates).
pub fn representative(sig: &Signature, p: i64) -> Option<Weight> {
    let verts = closure_vertices(sig);
    if verts.is_empty() {
        return None;
    }
    if kind_of(sig) == FacetteKind::SpecialPoint {
        let v = verts[0];
        return v.is_integral().then(|| Weight::new(v.a, v.b) * p - RHO);
    }
    // Bounding box of p·u in λ+ρ coordinates.
    let lo_a = verts.iter().map(|v| (v.a * p).div_euclid(v.d)).min()?;
    let hi_a = verts
        .iter()
        .map(|v| -((-(v.a * p)).div_euclid(v.d)))
        .max()?;
    let lo_b = verts.iter().map(|v| (v.b * p).div_euclid(v.d)).min()?;
    let hi_b = verts
        .iter()
        .map(|v| -((-(v.b * p)).div_euclid(v.d)))
        .max()?;
    // Barycenter times 3·n·L where L is the common denominator.
    let n = verts.len() as i64;
    let mut best: Option<(i64, Weight)> = None;
    for xa in lo_a..=hi_a {
        for xb in lo_b..=hi_b {
            let x = Weight::new(xa, xb);
            if signature_of(x - RHO, p).ok().as_ref() != Some(sig) {
                continue;
            }
            // Squared distance to the barycenter, in exact integer form.
            let mut da: i64 = 0;
            let mut db: i64 = 0;
            let l: i64 = verts.iter().fold(1, |acc, v| acc / gcd(acc, v.d) * v.d);
            for v in &verts {
                da += v.a * p * (l / v.d);
                db += v.b * p * (l / v.d);
            }
            let ea = xa * n * l - da;
            let eb = xb * n * l - db;
            // Quadratic form of the ω basis up to a constant: |x|² ∝ 3a² + 3ab + b².
            let dist = 3 * ea * ea + 3 * ea * eb + eb * eb;
            if best.is_none_or(|(d, w)| (dist, x) < (d, w)) {
                best = Some((dist, x));
            }
        }
    }
    best.map(|(_, x)| x - RHO)
}

/// Whether `upper` is above `lower`: a chain of wall crossings from `lower`
/// to `upper`, each step moving to the greater side of its hyperplane.
///
/// The search is confined to `P̄_2` plus one ring; a pair outside it is an error.
pub fn is_above(upper: &AlcoveId, lower: &AlcoveId, p: i64) -> Result<bool, GeometryError> {
    is_above_within(upper, lower, &Window::p2_plus(p, 1))
}

/// [`is_above`] with the chain search confined to `window`.
pub fn is_above_within(
    upper: &AlcoveId,
    lower: &AlcoveId,
    window: &Window,
) -> Result<bool, GeometryError> {
    let window = *window;
    let (su, sl) = (upper.signature(), lower.signature());
    if !window.contains(&su) || !window.contains(&sl) {
        return Err(GeometryError::WindowExceeded);
    }
    if su == sl {
        return Ok(true);
    }
    if (0..6).any(|i| su[i] < sl[i]) {
        return Ok(false);
    }
    // Every upward chain stays in the box between the two floor vectors.
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(sl);
    queue.push_back(sl);
    while let Some(s) = queue.pop_front() {
        for w in alcove_walls(&s) {
            if w.alcove_is_upper {
                continue;
            }
            let nb = w.neighbor;
            if nb == su {
                return Ok(true);
            }
            if (0..6).all(|i| nb[i] <= su[i]) && seen.insert(nb) {
                if !window.contains(&nb) {
                    return Err(GeometryError::WindowExceeded);
                }
                queue.push_back(nb);
            }
        }
    }
    Ok(false)
}

/// Canonical facette index over a window, with cached per-facette data.
#[derive(Clone, Debug)]
pub struct FacetteIndex {
    pub p: i64,
    pub window: Window,
    pub keys: Vec<FacetteKey>,
    pub sigs: Vec<Signature>,
    pub reps: Vec<Weight>,
    by_sig: BTreeMap<Signature, usize>,
}

impl FacetteIndex {
    pub fn build(p: i64, window: Window) -> Self {
        let mut items: Vec<(FacetteKey, Signature)> = window_signatures(&window)
            .into_iter()
            .map(|s| (FacetteKey::from_signature(&s, p), s))
            .collect();
        items.sort();
        let mut keys = Vec::with_capacity(items.len());
        let mut sigs = Vec::with_capacity(items.len());
        let mut reps = Vec::with_capacity(items.len());
        let mut by_sig = BTreeMap::new();
        for (i, (k, s)) in items.into_iter().enumerate() {
            let rep = representative(&s, p).expect("facette without integral weight");
            keys.push(k);
            sigs.push(s);
            reps.push(rep);
            by_sig.insert(s, i);
        }
        FacetteIndex {
            p,
            window,
            keys,
            sigs,
            reps,
            by_sig,
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn find_sig(&self, sig: &Signature) -> Option<usize> {
        self.by_sig.get(sig).copied()
    }

    pub fn find_key(&self, key: &FacetteKey) -> Option<usize> {
        self.keys.binary_search(key).ok()
    }

    pub fn find_weight(&self, lambda: Weight) -> Result<Option<usize>, GeometryError> {
        Ok(self.find_sig(&signature_of(lambda, self.p)?))
    }
}

/// Pairing of `λ+ρ` with `γ∨`.
pub fn shifted_pairing(lambda: Weight, g: PositiveRoot) -> i64 {
    pairing(lambda + RHO, g)
}

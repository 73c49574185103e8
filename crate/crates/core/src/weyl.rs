//! The Weyl group of G2, its linear and dot actions, and affine reflections.
//!
//! The simple reflections are `s = s_α` and `t = s_β`. Words compose as maps,
//! so `st` means "apply `t`, then `s`". The named elements follow the usual
//! shorthand `x = st`, `y = ts`, `z = sy`, `w = tx`.

use core::fmt;

use crate::lattice::{pairing, pairing_vector, root_coords, PositiveRoot, Weight, COROOTS, RHO};

type Mat = [[i64; 2]; 2];

const S: Mat = [[-1, 0], [1, 1]];
const T: Mat = [[1, 3], [0, -1]];
const ID: Mat = [[1, 0], [0, 1]];

const WORDS: [&str; 12] = [
    "", "s", "t", "st", "ts", "sts", "tst", "stst", "tsts", "ststs", "tstst", "ststst",
];
const NAMES: [&str; 12] = [
    "e", "s", "t", "x", "y", "z", "w", "sw", "tz", "ststs", "tstst", "w0",
];

const fn mat_mul(a: Mat, b: Mat) -> Mat {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

const fn mat_eq(a: Mat, b: Mat) -> bool {
    a[0][0] == b[0][0] && a[0][1] == b[0][1] && a[1][0] == b[1][0] && a[1][1] == b[1][1]
}

const fn word_matrix(w: &str) -> Mat {
    let bytes = w.as_bytes();
    let mut m = ID;
    let mut i = 0;
    while i < bytes.len() {
        m = mat_mul(m, if bytes[i] == b's' { S } else { T });
        i += 1;
    }
    m
}

const fn build_matrices() -> [Mat; 12] {
    let mut out = [ID; 12];
    let mut i = 0;
    while i < 12 {
        out[i] = word_matrix(WORDS[i]);
        i += 1;
    }
    out
}

const MATRICES: [Mat; 12] = build_matrices();

const fn find(m: Mat) -> usize {
    let mut i = 0;
    while i < 12 {
        if mat_eq(MATRICES[i], m) {
            return i;
        }
        i += 1;
    }
    panic!("matrix outside the group")
}

const fn build_cayley() -> [[u8; 12]; 12] {
    let mut out = [[0u8; 12]; 12];
    let mut i = 0;
    while i < 12 {
        let mut j = 0;
        while j < 12 {
            out[i][j] = find(mat_mul(MATRICES[i], MATRICES[j])) as u8;
            j += 1;
        }
        i += 1;
    }
    out
}

const CAYLEY: [[u8; 12]; 12] = build_cayley();

const fn build_inverse() -> [u8; 12] {
    let mut out = [0u8; 12];
    let mut i = 0;
    while i < 12 {
        let mut j = 0;
        while j < 12 {
            if CAYLEY[i][j] == 0 {
                out[i] = j as u8;
            }
            j += 1;
        }
        i += 1;
    }
    out
}

const INVERSE: [u8; 12] = build_inverse();

// ⟨w·x, γ∨⟩ = ⟨x, (Mᵀc)⟩ = sign·⟨x, δ∨⟩. Entry: (δ index, sign).
const fn build_coroot_pullback() -> [[(u8, i8); 6]; 12] {
    let mut out = [[(0u8, 1i8); 6]; 12];
    let mut w = 0;
    while w < 12 {
        let m = MATRICES[w];
        let mut g = 0;
        while g < 6 {
            let (ca, cb) = COROOTS[g];
            let na = m[0][0] * ca + m[1][0] * cb;
            let nb = m[0][1] * ca + m[1][1] * cb;
            let mut d = 0;
            let mut found = false;
            while d < 6 {
                if COROOTS[d].0 == na && COROOTS[d].1 == nb {
                    out[w][g] = (d as u8, 1);
                    found = true;
                } else if COROOTS[d].0 == -na && COROOTS[d].1 == -nb {
                    out[w][g] = (d as u8, -1);
                    found = true;
                }
                d += 1;
            }
            if !found {
                panic!("coroot not permuted");
            }
            g += 1;
        }
        w += 1;
    }
    out
}

const PULLBACK: [[(u8, i8); 6]; 12] = build_coroot_pullback();

/// An element of the Weyl group, stored by index into a fixed table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElem(u8);

impl WeylElem {
    pub const E: WeylElem = WeylElem(0);
    pub const S: WeylElem = WeylElem(1);
    pub const T: WeylElem = WeylElem(2);
    pub const X: WeylElem = WeylElem(3);
    pub const Y: WeylElem = WeylElem(4);
    pub const Z: WeylElem = WeylElem(5);
    pub const W: WeylElem = WeylElem(6);
    pub const SW: WeylElem = WeylElem(7);
    pub const TZ: WeylElem = WeylElem(8);
    pub const STSTS: WeylElem = WeylElem(9);
    pub const TSTST: WeylElem = WeylElem(10);
    pub const W0: WeylElem = WeylElem(11);

    pub fn all() -> impl Iterator<Item = WeylElem> + Clone {
        (0..12u8).map(WeylElem)
    }

    pub fn from_index(i: usize) -> Option<WeylElem> {
        (i < 12).then_some(WeylElem(i as u8))
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// 2×2 matrix on `ω`-coordinates (rows act on column vectors `(a, b)`).
    pub const fn matrix(self) -> [[i64; 2]; 2] {
        MATRICES[self.0 as usize]
    }

    pub const fn reduced_word(self) -> &'static str {
        WORDS[self.0 as usize]
    }

    /// Short name: `e s t x y z w sw tz ststs tstst w0`.
    pub const fn name(self) -> &'static str {
        NAMES[self.0 as usize]
    }

    pub const fn length(self) -> usize {
        WORDS[self.0 as usize].len()
    }

    /// `self ∘ other`.
    pub const fn compose(self, other: WeylElem) -> WeylElem {
        WeylElem(CAYLEY[self.0 as usize][other.0 as usize])
    }

    pub const fn inverse(self) -> WeylElem {
        WeylElem(INVERSE[self.0 as usize])
    }

    /// Parses a product of names or letters, read left to right:
    /// `"tz"`, `"w0"`, `"w_0"`, `"s w"`, `"ststs"`, `"e"`.
    pub fn parse(text: &str) -> Option<WeylElem> {
        let compact: alloc::string::String = text
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_' && *c != '·')
            .collect();
        if compact.is_empty() {
            return None;
        }
        let bytes = compact.as_bytes();
        let mut acc = WeylElem::E;
        let mut i = 0;
        while i < bytes.len() {
            let (elem, step) = match bytes[i] {
                b'w' if bytes.get(i + 1) == Some(&b'0') => (WeylElem::W0, 2),
                b'e' => (WeylElem::E, 1),
                b's' => (WeylElem::S, 1),
                b't' => (WeylElem::T, 1),
                b'x' => (WeylElem::X, 1),
                b'y' => (WeylElem::Y, 1),
                b'z' => (WeylElem::Z, 1),
                b'w' => (WeylElem::W, 1),
                _ => return None,
            };
            acc = acc.compose(elem);
            i += step;
        }
        Some(acc)
    }

    /// For a positive root `γ`, returns `(δ, ε)` with `⟨w·x, γ∨⟩ = ε⟨x, δ∨⟩`.
    pub const fn pull_coroot(self, gamma: PositiveRoot) -> (PositiveRoot, i64) {
        let (d, s) = PULLBACK[self.0 as usize][gamma as usize];
        (PositiveRoot::ALL[d as usize], s as i64)
    }
}

impl fmt::Display for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Linear action.
pub fn act(w: WeylElem, lambda: Weight) -> Weight {
    let m = w.matrix();
    let a = m[0][0]
        .checked_mul(lambda.a)
        .and_then(|x| m[0][1].checked_mul(lambda.b).and_then(|y| x.checked_add(y)))
        .expect("weight overflow");
    let b = m[1][0]
        .checked_mul(lambda.a)
        .and_then(|x| m[1][1].checked_mul(lambda.b).and_then(|y| x.checked_add(y)))
        .expect("weight overflow");
    Weight::new(a, b)
}

/// Dot action `w·λ = w(λ+ρ) − ρ`.
pub fn dot(w: WeylElem, lambda: Weight) -> Weight {
    act(w, lambda + RHO) - RHO
}

/// Weyl chamber of a weight for the dot action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chamber {
    Regular(WeylElem),
    Singular,
}

impl Chamber {
    pub fn elem(self) -> Option<WeylElem> {
        match self {
            Chamber::Regular(w) => Some(w),
            Chamber::Singular => None,
        }
    }
}

/// The `v` with `λ ∈ v·C`, where `C` is the open dominant cone shifted by `−ρ`.
pub fn chamber_of(lambda: Weight) -> Chamber {
    chamber_of_shifted(lambda + RHO)
}

/// As [`chamber_of`] but for `x = λ+ρ` directly.
pub fn chamber_of_shifted(x: Weight) -> Chamber {
    if pairing_vector(x).contains(&0) {
        return Chamber::Singular;
    }
    for v in WeylElem::all() {
        let y = act(v.inverse(), x);
        if y.a > 0 && y.b > 0 {
            return Chamber::Regular(v);
        }
    }
    unreachable!("regular weight outside every chamber")
}

/// The reflection in the hyperplane `⟨x+ρ, γ∨⟩ = m·p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineReflection {
    pub root: PositiveRoot,
    pub level: i64,
}

impl AffineReflection {
    pub const fn new(root: PositiveRoot, level: i64) -> Self {
        AffineReflection { root, level }
    }

    pub fn apply(self, lambda: Weight, p: i64) -> Weight {
        affine_reflect(self, lambda, p)
    }
}

/// `λ − (⟨λ+ρ, γ∨⟩ − m·p)·γ`.
pub fn affine_reflect(r: AffineReflection, lambda: Weight, p: i64) -> Weight {
    let k = pairing(lambda + RHO, r.root) - r.level * p;
    lambda - r.root.omega_coords() * k
}

/// Number of positive roots sent to negative roots by `v`.
pub fn inversion_count(v: WeylElem) -> usize {
    PositiveRoot::ALL
        .iter()
        .filter(|g| {
            let (x, y) = root_coords(act(v, g.omega_coords()));
            x < 0 || y < 0
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reflect_oracle(lambda: Weight, g: PositiveRoot) -> Weight {
        lambda - g.omega_coords() * pairing(lambda, g)
    }

    #[test]
    fn generators_match_reflection_formula() {
        for a in -5..5 {
            for b in -5..5 {
                let l = Weight::new(a, b);
                assert_eq!(act(WeylElem::S, l), reflect_oracle(l, PositiveRoot::Alpha));
                assert_eq!(act(WeylElem::T, l), reflect_oracle(l, PositiveRoot::Beta));
            }
        }
        assert_eq!(act(WeylElem::S, Weight::new(1, 0)), Weight::new(-1, 1));
        assert_eq!(act(WeylElem::T, Weight::new(0, 1)), Weight::new(3, -1));
    }

    #[test]
    fn group_structure() {
        assert_eq!(WeylElem::W0.matrix(), [[-1, 0], [0, -1]]);
        let st = WeylElem::S.compose(WeylElem::T);
        let mut acc = WeylElem::E;
        for k in 1..=6 {
            acc = acc.compose(st);
            assert_eq!(acc == WeylElem::E, k == 6);
        }
        for v in WeylElem::all() {
            assert_eq!(v.compose(v.inverse()), WeylElem::E);
            assert_eq!(inversion_count(v), v.length(), "{v}");
        }
        // 144 products checked against words.
        for u in WeylElem::all() {
            for v in WeylElem::all() {
                let mut word = alloc::string::String::from(u.reduced_word());
                word.push_str(v.reduced_word());
                let m = word_matrix(&word);
                assert_eq!(u.compose(v).matrix(), m);
            }
        }
    }

    #[test]
    fn named_elements() {
        assert_eq!(WeylElem::Z, WeylElem::S.compose(WeylElem::Y));
        assert_eq!(WeylElem::W, WeylElem::T.compose(WeylElem::X));
        assert_eq!(WeylElem::parse("tz"), Some(WeylElem::TZ));
        assert_eq!(WeylElem::parse("sw"), Some(WeylElem::SW));
        assert_eq!(WeylElem::parse("w_0"), Some(WeylElem::W0));
        assert_eq!(WeylElem::parse("tw"), Some(WeylElem::X));
        assert_eq!(WeylElem::parse("q"), None);
        for v in WeylElem::all() {
            assert_eq!(WeylElem::parse(v.name()), Some(v));
            if v != WeylElem::E {
                assert_eq!(WeylElem::parse(v.reduced_word()), Some(v));
            }
        }
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot(WeylElem::W0, Weight::ZERO), Weight::new(-2, -2));
        assert_eq!(dot(WeylElem::T, Weight::ZERO), Weight::new(3, -2));
        assert_eq!(dot(WeylElem::S, Weight::ZERO), Weight::new(-2, 1));
        assert_eq!(act(WeylElem::W0, Weight::new(4, -9)), Weight::new(-4, 9));
    }

    #[test]
    fn chamber_examples() {
        assert_eq!(chamber_of(Weight::ZERO), Chamber::Regular(WeylElem::E));
        assert_eq!(
            chamber_of(Weight::new(-2, 1)),
            Chamber::Regular(WeylElem::S)
        );
        assert_eq!(chamber_of(Weight::new(-1, -1)), Chamber::Singular);
        for v in WeylElem::all() {
            for a in 0..4 {
                for b in 0..4 {
                    let l = Weight::new(a, b);
                    assert_eq!(chamber_of(dot(v, l)), Chamber::Regular(v));
                }
            }
        }
    }

    #[test]
    fn pullback_matches_pairing() {
        for v in WeylElem::all() {
            for g in PositiveRoot::ALL {
                let (d, e) = v.pull_coroot(g);
                for (a, b) in [(1, 0), (0, 1), (3, -7)] {
                    let x = Weight::new(a, b);
                    assert_eq!(pairing(act(v, x), g), e * pairing(x, d));
                }
            }
        }
    }

    #[test]
    fn affine_reflection_examples() {
        let r = AffineReflection::new(PositiveRoot::TwoAlphaBeta, 1);
        assert_eq!(r.apply(Weight::ZERO, 7), Weight::new(2, 0));
        let r = AffineReflection::new(PositiveRoot::Alpha, 0);
        assert_eq!(r.apply(Weight::new(-1, 5), 7), Weight::new(-1, 5));
    }

    #[test]
    fn affine_reflection_is_involution() {
        for g in PositiveRoot::ALL {
            for m in -2..3 {
                let r = AffineReflection::new(g, m);
                for a in -50..50 {
                    for b in -50..50 {
                        let l = Weight::new(a, b);
                        assert_eq!(r.apply(r.apply(l, 11), 11), l);
                    }
                }
            }
        }
    }

    #[test]
    fn serre_swaps_lengths() {
        for v in WeylElem::all() {
            let u = WeylElem::W0.compose(v);
            assert_eq!(u.length(), 6 - v.length());
            let l = dot(v, Weight::new(2, 1));
            assert_eq!(chamber_of(dot(WeylElem::W0, l)), Chamber::Regular(u));
            assert_eq!(dot(WeylElem::W0, dot(WeylElem::W0, l)), l);
        }
    }
}

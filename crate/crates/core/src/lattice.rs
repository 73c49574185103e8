//! Weight lattice and root data of G2.
//!
//! Weights are written in the fundamental weight basis `(ω_α, ω_β)`, with `β`
//! the long simple root. Every vector indexed by roots uses the order of
//! [`PositiveRoot::ALL`].

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// An integral weight `a·ω_α + b·ω_β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight { a: 0, b: 0 };
    pub const OMEGA_ALPHA: Weight = Weight { a: 1, b: 0 };
    pub const OMEGA_BETA: Weight = Weight { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Weight { a, b }
    }

    pub fn checked_add(self, o: Weight) -> Option<Weight> {
        Some(Weight::new(
            self.a.checked_add(o.a)?,
            self.b.checked_add(o.b)?,
        ))
    }

    pub fn checked_sub(self, o: Weight) -> Option<Weight> {
        Some(Weight::new(
            self.a.checked_sub(o.a)?,
            self.b.checked_sub(o.b)?,
        ))
    }

    pub fn checked_scale(self, k: i64) -> Option<Weight> {
        Some(Weight::new(self.a.checked_mul(k)?, self.b.checked_mul(k)?))
    }

    /// Both simple pairings are non-negative.
    pub fn is_dominant(self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    /// `p·λ = p(λ+ρ) − ρ`, the image of `λ` under the dot-scaling by `p`.
    pub fn dot_scale(self, p: i64) -> Weight {
        (self + RHO) * p - RHO
    }
}

// Overflow panics: the arithmetic is exact or it stops.
impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        self.checked_add(o).expect("weight overflow")
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        self.checked_sub(o).expect("weight overflow")
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.checked_scale(-1).expect("weight overflow")
    }
}

impl Mul<i64> for Weight {
    type Output = Weight;
    fn mul(self, k: i64) -> Weight {
        self.checked_scale(k).expect("weight overflow")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Half the sum of the positive roots.
pub const RHO: Weight = Weight::new(1, 1);

/// The six positive roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PositiveRoot {
    Alpha,
    Beta,
    AlphaBeta,
    TwoAlphaBeta,
    ThreeAlphaBeta,
    ThreeAlphaTwoBeta,
}

impl PositiveRoot {
    pub const ALL: [PositiveRoot; 6] = [
        PositiveRoot::Alpha,
        PositiveRoot::Beta,
        PositiveRoot::AlphaBeta,
        PositiveRoot::TwoAlphaBeta,
        PositiveRoot::ThreeAlphaBeta,
        PositiveRoot::ThreeAlphaTwoBeta,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<PositiveRoot> {
        Self::ALL.get(i).copied()
    }

    /// `(c_α, c_β)` with `γ∨ = c_α·α∨ + c_β·β∨`.
    pub const fn coroot_coords(self) -> (i64, i64) {
        COROOTS[self as usize]
    }

    /// The root itself in the `ω` basis.
    pub const fn omega_coords(self) -> Weight {
        let (a, b) = ROOTS_OMEGA[self as usize];
        Weight::new(a, b)
    }

    /// The root in the simple-root basis.
    pub const fn simple_coords(self) -> (i64, i64) {
        match self {
            PositiveRoot::Alpha => (1, 0),
            PositiveRoot::Beta => (0, 1),
            PositiveRoot::AlphaBeta => (1, 1),
            PositiveRoot::TwoAlphaBeta => (2, 1),
            PositiveRoot::ThreeAlphaBeta => (3, 1),
            PositiveRoot::ThreeAlphaTwoBeta => (3, 2),
        }
    }

    pub const fn is_long(self) -> bool {
        matches!(
            self,
            PositiveRoot::Beta | PositiveRoot::ThreeAlphaBeta | PositiveRoot::ThreeAlphaTwoBeta
        )
    }

    pub const fn is_simple(self) -> bool {
        matches!(self, PositiveRoot::Alpha | PositiveRoot::Beta)
    }

    pub const fn name(self) -> &'static str {
        match self {
            PositiveRoot::Alpha => "a",
            PositiveRoot::Beta => "b",
            PositiveRoot::AlphaBeta => "a+b",
            PositiveRoot::TwoAlphaBeta => "2a+b",
            PositiveRoot::ThreeAlphaBeta => "3a+b",
            PositiveRoot::ThreeAlphaTwoBeta => "3a+2b",
        }
    }

    pub fn from_name(s: &str) -> Option<PositiveRoot> {
        Self::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub(crate) const COROOTS: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 3), (2, 3), (1, 1), (1, 2)];
const ROOTS_OMEGA: [(i64, i64); 6] = [(2, -1), (-3, 2), (-1, 1), (1, 0), (3, -1), (0, 1)];

/// `⟨λ, γ∨⟩`.
pub fn pairing(lambda: Weight, gamma: PositiveRoot) -> i64 {
    let (ca, cb) = gamma.coroot_coords();
    ca.checked_mul(lambda.a)
        .and_then(|x| cb.checked_mul(lambda.b).and_then(|y| x.checked_add(y)))
        .expect("pairing overflow")
}

/// `⟨λ, γ∨⟩` for all six positive roots in the fixed order.
pub fn pairing_vector(lambda: Weight) -> [i64; 6] {
    PositiveRoot::ALL.map(|g| pairing(lambda, g))
}

/// Coordinates `(x, y)` with `λ = xα + yβ`.
pub fn root_coords(lambda: Weight) -> (i64, i64) {
    // Inverse Cartan matrix: ω_α = 2α + β, ω_β = 3α + 2β.
    let x = lambda.a * 2 + lambda.b * 3;
    let y = lambda.a + lambda.b * 2;
    (x, y)
}

/// Inverse of [`root_coords`].
pub fn from_root_coords(x: i64, y: i64) -> Weight {
    // α = 2ω_α − ω_β, β = −3ω_α + 2ω_β.
    Weight::new(2 * x - 3 * y, 2 * y - x)
}

//! Exact alcove combinatorics for the cohomology of line bundles on the flag
//! variety of type G2, and a rule engine that decides which `H^i(λ)` vanish.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod beyond;
pub mod engine;
pub mod facette;
pub mod kb;
pub mod labels;
pub mod lattice;
pub mod ledger;
pub mod quantum;
pub mod report;
pub mod weyl;

pub use facette::{AlcoveId, FacetteKey, Window};
pub use lattice::{PositiveRoot, Weight, RHO};
pub use weyl::{Chamber, WeylElem};

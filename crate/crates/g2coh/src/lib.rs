//! File formats, pictures and the command line around `g2coh-core`.

pub mod cli;
pub mod json;
pub mod render;

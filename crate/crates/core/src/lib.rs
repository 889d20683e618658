//! Melnikov functions near the cuspidal loop of `H = y²/2 − x³/3 + x⁴/4`
//! under cubic perturbations: exact reductions, Picard–Fuchs expansions,
//! a quadrature oracle, and limit-cycle zero counting.

pub mod algebra;
pub mod cli;
pub mod cycles;
pub mod error;
pub mod melnikov;
pub mod oracle;
pub mod picard_fuchs;
pub mod reduction;
pub mod verify;

pub use error::{Error, Result};
pub use picard_fuchs::Side;

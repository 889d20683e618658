use thiserror::Error;

use crate::picard_fuchs::Side;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("system has {equations} equations for {unknowns} unknowns")]
    Underdetermined { equations: usize, unknowns: usize },

    #[error("coefficient {index} is not linear in the unknowns (degree {degree})")]
    NotLinear { index: usize, degree: u32 },

    #[error("one-form is not relatively exact: its Abelian integral does not vanish")]
    NotRelativelyExact,

    #[error("no polynomial decomposition r dH + dR found up to degree {max_degree}")]
    DecompositionFailed { max_degree: u32 },

    #[error("first-order Melnikov function does not vanish identically")]
    FirstOrderNonzero,

    #[error("Melnikov function of order {order} does not vanish identically")]
    LowerOrderNonzero { order: usize },

    #[error("unsupported Melnikov order {0} (expected 1, 2 or 3)")]
    UnsupportedOrder(usize),

    #[error("product of symbols {0} and {1} is not representable")]
    SymbolProduct(&'static str, &'static str),

    #[error("level h = {h} is outside the {side} period annulus")]
    OutOfRange { h: f64, side: Side },

    #[error("failed to bracket an oval endpoint at h = {0}")]
    RootNotFound(f64),

    #[error("adaptive quadrature did not converge (estimated error {estimate:e})")]
    NonConvergent { estimate: f64 },

    #[error("degenerate base point: {0}")]
    DegenerateBase(String),

    #[error("orbit did not return to the section within {steps} steps")]
    NoReturn { steps: usize },

    #[error("parameter {0} is not assigned a numeric value")]
    Unassigned(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

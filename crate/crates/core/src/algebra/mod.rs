//! Exact scalar, polynomial and one-form arithmetic.

pub mod frac;
pub mod hpoly;
pub mod linalg;
pub mod param;
pub mod plane;
pub mod ratfunc;
pub mod sym;

pub use frac::{frac, Frac};
pub use hpoly::HPoly;
pub use linalg::linear_solve;
pub use param::{poly, Param, ParamPoly};
pub use plane::{plane_poly_d, OneForm, PlanePoly};
pub use ratfunc::RationalExpr;
pub use sym::{Sym, SymPoly, SymScalar, Symbol, SymbolValues};

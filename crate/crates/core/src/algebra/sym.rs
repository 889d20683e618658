//! Formal linear combinations over the transcendental basis {1, √2π, b₀, b₁}.

use std::fmt;

use super::frac::{frac_string, to_f64, Coeff, Frac};
use super::param::{Param, ParamPoly};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    One,
    Sqrt2Pi,
    B0,
    B1,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::One, Symbol::Sqrt2Pi, Symbol::B0, Symbol::B1];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::One => "1",
            Symbol::Sqrt2Pi => "sqrt2pi",
            Symbol::B0 => "b0",
            Symbol::B1 => "b1",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Numeric values of the symbols on one side of the loop.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SymbolValues {
    pub sqrt2pi: f64,
    pub b0: f64,
    pub b1: f64,
}

impl SymbolValues {
    pub fn get(&self, s: Symbol) -> f64 {
        match s {
            Symbol::One => 1.0,
            Symbol::Sqrt2Pi => self.sqrt2pi,
            Symbol::B0 => self.b0,
            Symbol::B1 => self.b1,
        }
    }
}

/// `Σ coeff_s · s` over the four symbols.
#[derive(Clone, PartialEq, Debug)]
pub struct Sym<T> {
    comps: [T; 4],
}

pub type SymScalar = Sym<Frac>;
pub type SymPoly = Sym<ParamPoly>;

impl<T: Coeff> Sym<T> {
    pub fn zero() -> Self {
        Sym { comps: [T::ring_zero(), T::ring_zero(), T::ring_zero(), T::ring_zero()] }
    }

    pub fn of(symbol: Symbol, coeff: T) -> Self {
        let mut s = Self::zero();
        s.comps[symbol.index()] = coeff;
        s
    }

    pub fn get(&self, symbol: Symbol) -> &T {
        &self.comps[symbol.index()]
    }

    pub fn set(&mut self, symbol: Symbol, coeff: T) {
        self.comps[symbol.index()] = coeff;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(T::is_ring_zero)
    }

    /// Symbols with a nonzero coefficient.
    pub fn support(&self) -> Vec<Symbol> {
        Symbol::ALL.into_iter().filter(|s| !self.get(*s).is_ring_zero()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        Sym { comps: std::array::from_fn(|k| self.comps[k].ring_add(&other.comps[k])) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Sym { comps: std::array::from_fn(|k| self.comps[k].ring_sub(&other.comps[k])) }
    }

    pub fn neg(&self) -> Self {
        Sym { comps: std::array::from_fn(|k| self.comps[k].ring_neg()) }
    }

    pub fn scale(&self, by: &Frac) -> Self {
        Sym { comps: std::array::from_fn(|k| self.comps[k].ring_scale(by)) }
    }

    /// Multiplies every component by a ring element (no symbol involved).
    pub fn mul_coeff(&self, by: &T) -> Self {
        Sym { comps: std::array::from_fn(|k| self.comps[k].ring_mul(by)) }
    }

    /// Product of two combinations; only defined when at least one side is a
    /// pure multiple of `1`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let transcendental = |s: &Self| s.support().into_iter().find(|&x| x != Symbol::One);
        match (transcendental(self), transcendental(other)) {
            (Some(a), Some(b)) => Err(Error::SymbolProduct(a.name(), b.name())),
            (None, _) => Ok(other.mul_coeff(self.get(Symbol::One))),
            (_, None) => Ok(self.mul_coeff(other.get(Symbol::One))),
        }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Sym<U> {
        Sym { comps: std::array::from_fn(|k| f(&self.comps[k])) }
    }
}

impl SymScalar {
    pub fn eval(&self, values: &SymbolValues) -> f64 {
        Symbol::ALL.iter().map(|&s| to_f64(self.get(s)) * values.get(s)).sum()
    }

    pub fn to_poly(&self) -> SymPoly {
        self.map(|c| ParamPoly::constant(c.clone()))
    }
}

impl SymPoly {
    pub fn eval(&self, values: &SymbolValues, params: &std::collections::BTreeMap<Param, f64>) -> Result<f64> {
        let mut acc = 0.0;
        for s in Symbol::ALL {
            let c = self.get(s);
            if !c.is_zero() {
                acc += c.eval_f64(params)? * values.get(s);
            }
        }
        Ok(acc)
    }

    /// Constant part, when every component is free of parameters.
    pub fn as_scalar(&self) -> Option<SymScalar> {
        let comps: Option<Vec<Frac>> = self.comps.iter().map(ParamPoly::as_constant).collect();
        comps.map(|c| Sym { comps: [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()] })
    }
}

impl<T: Coeff> Default for Sym<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for SymScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|s| match s {
                Symbol::One => frac_string(self.get(s)),
                _ => format!("{}*{}", frac_string(self.get(s)), s),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|s| match s {
                Symbol::One => format!("{}", self.get(s)),
                _ => format!("({})*{}", self.get(s), s),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

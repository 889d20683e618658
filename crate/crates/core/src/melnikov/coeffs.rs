//! Expansion coefficients of Melnikov functions and their vanishing sets.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::frac::Frac;
use crate::algebra::linalg::det_poly;
use crate::algebra::{Param, ParamPoly, RationalExpr, SymPoly, Symbol, SymbolValues};
use crate::error::{Error, Result};
use crate::picard_fuchs::{expand_reduced, exponent_class, exponent_string, label_e6, max_e6, ExponentClass, Side};
use crate::reduction::ReducedIntegral;

/// Coefficients `c₀, c₁, …` of `M(h) = c₀ + b₀c₁|h|^{5/6} + c₂h + b₁c₃|h|^{7/6} + …`.
///
/// Entry `n` belongs to exponent `label_e6(n)/6` and carries a single
/// symbol: √2π for integer exponents, b₀ or b₁ for the fractional ones.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffList {
    pub side: Side,
    entries: Vec<SymPoly>,
}

pub fn symbol_for_label(n: usize) -> Symbol {
    match exponent_class(label_e6(n)) {
        ExponentClass::Integer => Symbol::Sqrt2Pi,
        ExponentClass::FiveSixths => Symbol::B0,
        ExponentClass::SevenSixths => Symbol::B1,
    }
}

impl CoeffList {
    pub fn new(side: Side, entries: Vec<SymPoly>) -> CoeffList {
        CoeffList { side, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[SymPoly] {
        &self.entries
    }

    pub fn get(&self, n: usize) -> &SymPoly {
        &self.entries[n]
    }

    pub fn label(n: usize) -> String {
        format!("c{n}")
    }

    pub fn exponent(n: usize) -> String {
        exponent_string(label_e6(n))
    }

    /// The coefficient of entry `n`'s symbol.
    pub fn rational(&self, n: usize) -> ParamPoly {
        let e = &self.entries[n];
        let s = symbol_for_label(n);
        debug_assert!(e.support().iter().all(|&t| t == s || t == Symbol::One && n == 0));
        e.get(s).clone()
    }

    pub fn rationals(&self) -> Vec<ParamPoly> {
        (0..self.len()).map(|n| self.rational(n)).collect()
    }

    pub fn first(&self, n: usize) -> CoeffList {
        CoeffList::new(self.side, self.entries[..n.min(self.len())].to_vec())
    }

    /// Entries `labels` only, renumbered from zero. Symbols are kept.
    pub fn select(&self, labels: &[usize]) -> Vec<SymPoly> {
        labels.iter().map(|&n| self.entries[n].clone()).collect()
    }

    pub fn map(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> CoeffList {
        CoeffList::new(self.side, self.entries.iter().map(|e| e.map(&f)).collect())
    }

    pub fn substitute(&self, subs: &BTreeMap<Param, ParamPoly>) -> CoeffList {
        self.map(|c| c.compose(subs))
    }

    pub fn assign(&self, values: &BTreeMap<Param, Frac>) -> CoeffList {
        self.map(|c| c.eval_partial(values))
    }

    /// Numeric coefficients with symbol values included.
    pub fn eval_f64(&self, values: &SymbolValues, params: &BTreeMap<Param, f64>) -> Result<Vec<f64>> {
        self.entries.iter().map(|e| e.eval(values, params)).collect()
    }
}

impl fmt::Display for CoeffList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, e) in self.entries.iter().enumerate() {
            writeln!(f, "{} [|h|^{}]: {}", CoeffList::label(n), CoeffList::exponent(n), e)?;
        }
        Ok(())
    }
}

/// The first `count` expansion coefficients of a reduced Melnikov integral.
pub fn coeff_list(r: &ReducedIntegral, side: Side, count: usize) -> CoeffList {
    let top = if count == 0 { 0 } else { label_e6(count - 1) };
    let order = (0..).find(|&n| max_e6(n) >= top).unwrap_or(0);
    let e = expand_reduced(r, side, order);
    CoeffList::new(side, (0..count).map(|n| e.coefficient(label_e6(n))).collect())
}

fn linear_system(
    equations: &[ParamPoly],
    unknowns: &[Param],
) -> Result<(Vec<Vec<ParamPoly>>, Vec<ParamPoly>)> {
    let zero_point: BTreeMap<Param, Frac> = unknowns.iter().map(|&u| (u, Frac::zero())).collect();
    let mut matrix = Vec::with_capacity(equations.len());
    let mut rhs = Vec::with_capacity(equations.len());
    for (index, eq) in equations.iter().enumerate() {
        let degree = eq.degree_in_set(unknowns);
        if degree > 1 {
            return Err(Error::NotLinear { index, degree });
        }
        matrix.push(unknowns.iter().map(|&u| eq.derivative(u)).collect());
        rhs.push(-eq.eval_partial(&zero_point));
    }
    Ok((matrix, rhs))
}

/// Solves `c = 0` for the given unknowns after assigning `fixed`.
///
/// The equations are the symbol coefficients of `coeffs`; they must be
/// linear in the unknowns and as many as the unknowns. The solution is
/// returned through Cramer's rule as quotients of parameter polynomials.
pub fn solve_vanishing(
    coeffs: &CoeffList,
    unknowns: &[Param],
    fixed: &BTreeMap<Param, Frac>,
) -> Result<BTreeMap<Param, RationalExpr>> {
    let equations: Vec<ParamPoly> = coeffs.assign(fixed).rationals();
    solve_linear(&equations, unknowns)
}

pub fn solve_linear(equations: &[ParamPoly], unknowns: &[Param]) -> Result<BTreeMap<Param, RationalExpr>> {
    if equations.len() != unknowns.len() {
        return Err(Error::Underdetermined { equations: equations.len(), unknowns: unknowns.len() });
    }
    let (matrix, rhs) = linear_system(equations, unknowns)?;
    let det = det_poly(&matrix);
    if det.is_zero() {
        // consistent or not, the solution is not unique
        return Err(Error::SingularMatrix);
    }
    let mut out = BTreeMap::new();
    for (k, &u) in unknowns.iter().enumerate() {
        let mut m = matrix.clone();
        for (row, b) in m.iter_mut().zip(&rhs) {
            row[k] = b.clone();
        }
        out.insert(u, RationalExpr::new(det_poly(&m), det.clone()));
    }
    Ok(out)
}

/// `det ∂(c…)/∂(unknowns) = rational · (√2π)^power`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianDet {
    pub rational: ParamPoly,
    pub sqrt2pi_power: u32,
}

impl JacobianDet {
    pub fn eval_f64(&self, params: &BTreeMap<Param, f64>) -> Result<f64> {
        let s = std::f64::consts::SQRT_2 * std::f64::consts::PI;
        Ok(self.rational.eval_f64(params)? * s.powi(self.sqrt2pi_power as i32))
    }
}

impl fmt::Display for JacobianDet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sqrt2pi_power {
            0 => write!(f, "{}", self.rational),
            1 => write!(f, "({})*sqrt2pi", self.rational),
            n => write!(f, "({})*sqrt2pi^{}", self.rational, n),
        }
    }
}

/// Jacobian determinant of the coefficients with respect to `unknowns`,
/// evaluated at `point` (parameters absent from `point` stay symbolic).
pub fn jacobian_det(coeffs: &CoeffList, unknowns: &[Param], point: &BTreeMap<Param, Frac>) -> Result<JacobianDet> {
    if coeffs.len() != unknowns.len() {
        return Err(Error::Underdetermined { equations: coeffs.len(), unknowns: unknowns.len() });
    }
    let outside: BTreeMap<Param, Frac> =
        point.iter().filter(|(p, _)| !unknowns.contains(p)).map(|(p, v)| (*p, v.clone())).collect();
    let equations = coeffs.assign(&outside).rationals();
    let (matrix, _) = linear_system(&equations, unknowns)?;
    let power = (0..coeffs.len()).filter(|&n| symbol_for_label(n) == Symbol::Sqrt2Pi).count() as u32;
    Ok(JacobianDet { rational: det_poly(&matrix), sqrt2pi_power: power })
}

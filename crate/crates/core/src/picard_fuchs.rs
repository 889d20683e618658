//! Picard–Fuchs system of the basis integrals and their expansions in
//! powers of |h|^{1/6} near the cuspidal loop.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::algebra::frac::{fint, frac, Frac};
use crate::algebra::linalg::{invert, mat_vec_frac, FracMatrix};
use crate::algebra::{HPoly, Param, SymPoly, SymScalar, Symbol, SymbolValues};
use crate::error::{Error, Result};
use crate::reduction::ReducedIntegral;

/// Period annulus: outside the loop (`h > 0`) or inside it (`-1/12 < h < 0`).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "+",
            Side::Minus => "-",
        })
    }
}

impl serde::Serialize for Side {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s.trim() {
            "+" | "plus" => Ok(Side::Plus),
            "-" | "minus" => Ok(Side::Minus),
            other => Err(Error::Parse(format!("side must be '+' or '-', got '{other}'"))),
        }
    }
}

/// `P(h) X' = (A1 h + A0) X`.
#[derive(Clone, Debug, PartialEq)]
pub struct PFSystem {
    pub a0: FracMatrix,
    pub a1: FracMatrix,
    pub p_of_h: HPoly,
}

fn int_matrix(rows: [[i64; 3]; 3]) -> FracMatrix {
    rows.iter().map(|r| r.iter().map(|&v| fint(v)).collect()).collect()
}

pub fn pf_system() -> PFSystem {
    PFSystem {
        a0: int_matrix([[10, 2, -15], [0, 14, -15], [0, 0, 0]]),
        a1: int_matrix([[108, 0, 0], [-12, 144, 0], [-12, -24, 180]]),
        p_of_h: HPoly::from_fracs(&[fint(0), fint(12), fint(144)]),
    }
}

impl PFSystem {
    /// `(A1 h + A0) X` at a numeric level.
    pub fn apply_f64(&self, h: f64, x: [f64; 3]) -> [f64; 3] {
        let f = crate::algebra::frac::to_f64;
        std::array::from_fn(|r| (0..3).map(|c| (f(&self.a1[r][c]) * h + f(&self.a0[r][c])) * x[c]).sum())
    }

    pub fn p_f64(&self, h: f64) -> f64 {
        12.0 * h * (12.0 * h + 1.0)
    }
}

fn shifted(m: &FracMatrix, lambda: &Frac) -> FracMatrix {
    let mut out = m.clone();
    for (k, row) in out.iter_mut().enumerate() {
        row[k] -= lambda;
    }
    out
}

/// Coefficient vectors of the regular (`h^j`), 5/6-class and 7/6-class series.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTriple {
    pub a: [SymScalar; 3],
    pub b: [SymScalar; 3],
    pub c: [SymScalar; 3],
}

type RatVec = [Frac; 3];

fn sym_vec(v: &RatVec, s: Symbol) -> [SymScalar; 3] {
    std::array::from_fn(|k| SymScalar::of(s, v[k].clone()))
}

fn initial_rational() -> (RatVec, RatVec, RatVec) {
    let a10 = frac(4, 27);
    let a = [a10.clone(), &a10 * frac(5, 6), &a10 * frac(7, 9)];
    let b = [fint(-2), fint(0), fint(0)];
    let c = [fint(1), fint(2), fint(0)];
    (a, b, c)
}

/// Rational parts of `(a_j, b_j, c_j)`; the symbols √2π, b₀, b₁ are implied.
fn rational_series(order: usize, side: Side) -> Vec<(RatVec, RatVec, RatVec)> {
    let pf = pf_system();
    let mut out = vec![initial_rational()];
    // ∓ in the fractional recursions: − on the plus side
    let sign = match side {
        Side::Plus => fint(-1),
        Side::Minus => fint(1),
    };
    let step = |lhs_shift: Frac, rhs_shift: Frac, prev: &RatVec, s: &Frac| -> RatVec {
        let inv = invert(&shifted(&pf.a0, &lhs_shift)).expect("shifted A0 is nonsingular");
        let rhs: Vec<Frac> = mat_vec_frac(&shifted(&pf.a1, &rhs_shift), prev).into_iter().map(|v| v * s).collect();
        let v = mat_vec_frac(&inv, &rhs);
        [v[0].clone(), v[1].clone(), v[2].clone()]
    };
    for j in 1..=order {
        let jj = j as i64;
        let (pa, pb, pc) = out.last().unwrap().clone();
        let a = step(fint(12 * jj), fint(144 * (jj - 1)), &pa, &fint(-1));
        let b = step(fint(12 * jj + 10), fint(144 * jj - 24), &pb, &sign);
        let c = step(fint(12 * jj + 14), fint(144 * jj + 24), &pc, &sign);
        out.push((a, b, c));
    }
    out
}

pub fn initial_coeffs(side: Side) -> CoeffTriple {
    recurse_coeffs(0, side).remove(0)
}

pub fn recurse_coeffs(order: usize, side: Side) -> Vec<CoeffTriple> {
    rational_series(order, side)
        .iter()
        .map(|(a, b, c)| CoeffTriple {
            a: sym_vec(a, Symbol::Sqrt2Pi),
            b: sym_vec(b, Symbol::B0),
            c: sym_vec(c, Symbol::B1),
        })
        .collect()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExponentClass {
    Integer,
    FiveSixths,
    SevenSixths,
}

pub fn exponent_class(e6: u32) -> ExponentClass {
    match e6 % 6 {
        0 => ExponentClass::Integer,
        5 => ExponentClass::FiveSixths,
        1 => ExponentClass::SevenSixths,
        r => panic!("exponent {e6}/6 has residue {r}, outside the three classes"),
    }
}

/// Index `j` of the series an exponent belongs to: `6j`, `6j+5` or `6j+7`.
pub fn series_index(e6: u32) -> u32 {
    match exponent_class(e6) {
        ExponentClass::Integer => e6 / 6,
        ExponentClass::FiveSixths => (e6 - 5) / 6,
        ExponentClass::SevenSixths => (e6 - 7) / 6,
    }
}

/// `"0"`, `"5/6"`, `"1"`, `"7/6"`, `"11/6"`, ...
pub fn exponent_string(e6: u32) -> String {
    let q = frac(e6.into(), 6);
    crate::algebra::frac::frac_string(&q)
}

/// Exponent (in sixths) of the n-th coefficient in the ordering
/// constant, 5/6, 1, 7/6, 11/6, 2, 13/6, ...
pub fn label_e6(n: usize) -> u32 {
    if n == 0 {
        return 0;
    }
    let j = ((n - 1) / 3) as u32;
    match (n - 1) % 3 {
        0 => 6 * j + 5,
        1 => 6 * j + 6,
        _ => 6 * j + 7,
    }
}

pub fn e6_label(e6: u32) -> usize {
    match e6 {
        0 => 0,
        _ => {
            let j = series_index(e6) as usize;
            match exponent_class(e6) {
                ExponentClass::FiveSixths => 3 * j + 1,
                ExponentClass::Integer => 3 * (j - 1) + 2,
                ExponentClass::SevenSixths => 3 * j + 3,
            }
        }
    }
}

fn allowed_symbols(e6: u32) -> &'static [Symbol] {
    match exponent_class(e6) {
        ExponentClass::Integer => &[Symbol::One, Symbol::Sqrt2Pi],
        ExponentClass::FiveSixths => &[Symbol::B0],
        ExponentClass::SevenSixths => &[Symbol::B1],
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    /// Exponent times six.
    pub e6: u32,
    pub coeff: SymPoly,
}

/// Truncated series `Σ coeff · |h|^{e6/6}`, where integer exponents use the
/// signed power `h^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub side: Side,
    terms: Vec<Term>,
}

impl Expansion {
    /// Drops zero terms and checks the exponent-class structure.
    pub fn new(side: Side, terms: BTreeMap<u32, SymPoly>) -> Expansion {
        let terms: Vec<Term> = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e6, coeff)| {
                let allowed = allowed_symbols(e6);
                assert!(
                    coeff.support().iter().all(|s| allowed.contains(s)),
                    "symbol outside the exponent class at {e6}/6"
                );
                Term { e6, coeff }
            })
            .collect();
        Expansion { side, terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e6: u32) -> SymPoly {
        self.terms.iter().find(|t| t.e6 == e6).map(|t| t.coeff.clone()).unwrap_or_default()
    }

    pub fn eval(&self, h: f64, values: &SymbolValues, params: &BTreeMap<Param, f64>) -> Result<f64> {
        let mut acc = 0.0;
        for t in &self.terms {
            let c = t.coeff.eval(values, params)?;
            acc += c * power(h, t.e6);
        }
        Ok(acc)
    }
}

/// `h^j` for integer exponents, `|h|^{e6/6}` otherwise.
pub fn power(h: f64, e6: u32) -> f64 {
    match exponent_class(e6) {
        ExponentClass::Integer => h.powi((e6 / 6) as i32),
        _ => h.abs().powf(f64::from(e6) / 6.0),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Basis {
    I01,
    I11,
    I21,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::I01, Basis::I11, Basis::I21];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Basis> {
        match s {
            "I01" => Ok(Basis::I01),
            "I11" => Ok(Basis::I11),
            "I21" => Ok(Basis::I21),
            _ => Err(Error::Parse(format!("basis must be I01, I11 or I21, got '{s}'"))),
        }
    }
}

/// Largest retained exponent (in sixths) at truncation order `order`.
pub fn max_e6(order: usize) -> u32 {
    6 * order as u32 + 7
}

fn basis_terms(which: Basis, side: Side, order: usize) -> BTreeMap<u32, SymPoly> {
    let k = which.index();
    let cap = max_e6(order);
    let mut terms = BTreeMap::new();
    // the integer term of series order + 1 still lies below the cap
    for (j, (a, b, c)) in rational_series(order + 1, side).iter().enumerate() {
        let j = j as u32;
        terms.insert(6 * j, SymPoly::of(Symbol::Sqrt2Pi, a[k].clone().into()));
        terms.insert(6 * j + 5, SymPoly::of(Symbol::B0, b[k].clone().into()));
        terms.insert(6 * j + 7, SymPoly::of(Symbol::B1, c[k].clone().into()));
    }
    terms.retain(|&e6, _| e6 <= cap);
    terms
}

pub fn basis_expansion(which: Basis, side: Side, order: usize) -> Expansion {
    Expansion::new(side, basis_terms(which, side, order))
}

/// Substitutes the basis expansions into `p1 I01 + p2 I11 + p3 I21`.
pub fn expand_reduced(r: &ReducedIntegral, side: Side, order: usize) -> Expansion {
    let cap = max_e6(order);
    let mut acc: BTreeMap<u32, SymPoly> = BTreeMap::new();
    for (which, p) in Basis::ALL.iter().zip(r.components()) {
        if p.is_zero() {
            continue;
        }
        let basis = basis_terms(*which, side, order);
        for (m, cm) in p.coeffs().iter().enumerate() {
            if cm.is_zero() {
                continue;
            }
            for (&e6, sym) in &basis {
                let e = e6 + 6 * m as u32;
                if e > cap {
                    continue;
                }
                // h^m |h|^s = (−1)^m |h|^{m+s} for h < 0
                let flip = side == Side::Minus && exponent_class(e6) != ExponentClass::Integer && m % 2 == 1;
                let mut term = sym.mul_coeff(cm);
                if flip {
                    term = term.neg();
                }
                let slot = acc.entry(e).or_default();
                *slot = slot.add(&term);
            }
        }
    }
    Expansion::new(side, acc)
}

/// Maps an expansion to the other side: regular terms are kept, the
/// coefficient of `|h|^{j+5/6}` or `|h|^{j+7/6}` is multiplied by `(−1)^j`
/// while the symbols b₀, b₁ switch to the other side's values.
pub fn mirror(e: &Expansion) -> Expansion {
    let terms = e
        .terms()
        .iter()
        .map(|t| {
            let flip = exponent_class(t.e6) != ExponentClass::Integer && series_index(t.e6) % 2 == 1;
            (t.e6, if flip { t.coeff.neg() } else { t.coeff.clone() })
        })
        .collect();
    Expansion::new(e.side.other(), terms)
}

/// The h¹ coefficients `a_1` in units of √2π.
pub fn regular_first_order() -> RatVec {
    rational_series(1, Side::Plus)[1].0.clone()
}

/// Whether `det(A0 − λE) ≠ 0`.
pub fn shifted_nonsingular(lambda: &Frac) -> bool {
    !crate::algebra::linalg::det_frac(&shifted(&pf_system().a0, lambda)).is_zero()
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|t| format!("[{}]·|h|^{}", t.coeff, exponent_string(t.e6))).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Default for Expansion {
    fn default() -> Self {
        Expansion { side: Side::Plus, terms: Vec::new() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff(e: &Expansion, e6: u32, s: Symbol) -> Frac {
        e.coefficient(e6).get(s).as_constant().unwrap()
    }

    #[test]
    fn system_entries() {
        let pf = pf_system();
        assert_eq!(pf.a0[0][2], fint(-15));
        assert_eq!(pf.a1[2][2], fint(180));
        assert!(pf.a0[2].iter().all(Frac::is_zero));
        assert!(pf.p_of_h.eval(&frac(-1, 12)).is_zero());
        for j in 1..40 {
            for lambda in [0, 10, 14] {
                assert!(shifted_nonsingular(&fint(12 * j + lambda)));
            }
        }
    }

    #[test]
    fn initial_vectors() {
        for side in [Side::Plus, Side::Minus] {
            let t = initial_coeffs(side);
            let a10 = frac(4, 27);
            assert_eq!(t.a[0].get(Symbol::Sqrt2Pi), &a10);
            assert_eq!(t.a[1].get(Symbol::Sqrt2Pi), &(&a10 * frac(5, 6)));
            assert_eq!(t.a[2].get(Symbol::Sqrt2Pi), &(&a10 * frac(7, 9)));
            assert_eq!(t.b[0].get(Symbol::B0), &fint(-2));
            assert_eq!(t.c[1].get(Symbol::B1), &(t.c[0].get(Symbol::B1) * fint(2)));
            assert!(t.c[2].is_zero());
        }
    }

    #[test]
    fn initial_vectors_are_eigenvectors() {
        let pf = pf_system();
        let (a, b, c) = initial_rational();
        assert!(mat_vec_frac(&pf.a0, &a).iter().all(Frac::is_zero));
        assert!(mat_vec_frac(&shifted(&pf.a0, &fint(10)), &b).iter().all(Frac::is_zero));
        assert!(mat_vec_frac(&shifted(&pf.a0, &fint(14)), &c).iter().all(Frac::is_zero));
    }

    #[test]
    fn first_recursion_step() {
        let t = &recurse_coeffs(1, Side::Plus)[1];
        assert_eq!(t.b[0].get(Symbol::B0), &frac(35, 44));
        assert_eq!(t.c[2].get(Symbol::B1), &frac(-30, 13));
        assert_eq!(t.a[1].get(Symbol::Sqrt2Pi), &fint(2));
        assert_eq!(regular_first_order(), [fint(0), fint(2), frac(4, 3)]);
        // the regular series stops after h¹
        for t in &recurse_coeffs(6, Side::Plus)[2..] {
            assert!(t.a.iter().all(SymScalar::is_zero));
        }
    }

    #[test]
    fn printed_leading_terms() {
        let e = basis_expansion(Basis::I21, Side::Plus, 2);
        assert_eq!(coeff(&e, 0, Symbol::Sqrt2Pi), frac(28, 243));
        assert_eq!(coeff(&e, 6, Symbol::Sqrt2Pi), frac(4, 3));
        assert_eq!(coeff(&e, 11, Symbol::B0), frac(12, 11));
        assert_eq!(coeff(&e, 13, Symbol::B1), frac(-30, 13));
        let e0 = basis_expansion(Basis::I01, Side::Plus, 0);
        assert_eq!(coeff(&e0, 0, Symbol::Sqrt2Pi), frac(4, 27));
        let m = basis_expansion(Basis::I11, Side::Minus, 1);
        assert!(m.coefficient(5).is_zero());
        assert_eq!(coeff(&m, 11, Symbol::B0), frac(-21, 22));
        assert_eq!(coeff(&m, 13, Symbol::B1), frac(55, 26));
    }

    #[test]
    fn labels_round_trip() {
        let expected = [0, 5, 6, 7, 11, 12, 13, 17, 18, 19];
        for (n, &e6) in expected.iter().enumerate() {
            assert_eq!(label_e6(n), e6);
            assert_eq!(e6_label(e6), n);
        }
        assert_eq!(exponent_string(11), "11/6");
        assert_eq!(exponent_string(12), "2");
    }

    #[test]
    fn expansion_of_reduced_integrals() {
        let r = ReducedIntegral::basis(2);
        let e = expand_reduced(&r, Side::Plus, 0);
        assert_eq!(coeff(&e, 0, Symbol::Sqrt2Pi), frac(28, 243));
        let shifted = ReducedIntegral::basis(0).shift(1);
        let base = basis_expansion(Basis::I01, Side::Minus, 3);
        let moved = expand_reduced(&shifted, Side::Minus, 3);
        for t in base.terms() {
            if t.e6 + 6 > max_e6(3) {
                continue;
            }
            let flip = exponent_class(t.e6) != ExponentClass::Integer;
            let expect = if flip { t.coeff.neg() } else { t.coeff.clone() };
            assert_eq!(moved.coefficient(t.e6 + 6), expect);
        }
    }

    #[test]
    fn mirror_matches_direct_recursion() {
        for which in Basis::ALL {
            let plus = basis_expansion(which, Side::Plus, 8);
            let minus = basis_expansion(which, Side::Minus, 8);
            assert_eq!(mirror(&plus), minus);
            assert_eq!(mirror(&minus), plus);
        }
        assert!(mirror(&Expansion::default()).is_zero());
    }

    #[test]
    fn truncation_keeps_everything_below_the_cap() {
        // order 0 keeps exponents up to 7/6, including the h term
        let e = basis_expansion(Basis::I11, Side::Plus, 0);
        assert_eq!(coeff(&e, 6, Symbol::Sqrt2Pi), Frac::from_integer(2.into()));
        assert!(e.terms().iter().all(|t| t.e6 <= 7));
    }
}

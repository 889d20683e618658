//! Parameter points with many small zeros of a truncated Melnikov
//! expansion, zero counting, and a Poincaré-map check of the predictions.

pub mod ode;
pub mod zeros;

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

pub use ode::{displacement, displacement_for, scan, DisplacementSample};
pub use zeros::{count_zeros, count_zeros_with, dominance_window, NumericSeries, ZeroReport, SCAN_FLOOR};

use crate::algebra::frac::{frac, from_f64, to_f64, Frac};
use crate::algebra::linalg::linear_solve;
use crate::algebra::{Param, ParamPoly, SymbolValues};
use crate::error::{Error, Result};
use crate::melnikov::coeffs::{solve_linear, symbol_for_label};
use crate::melnikov::{coeff_list, jacobian_det, melnikov_3, solve_vanishing, CoeffList, PerturbationSet};
use crate::picard_fuchs::{label_e6, power, Side};
use crate::reduction::ReducedIntegral;

/// Parameters that stay fixed in the third-order construction, with their
/// default values.
pub const FIXED: [(&str, i64); 8] = [
    ("p_021", 1),
    ("p_031", 1),
    ("p_111", 1),
    ("q_021", 1),
    ("p_103", 0),
    ("p_203", 0),
    ("p_303", 0),
    ("q_033", 0),
];

/// Parameters solved for, one per vanishing coefficient `c₀ … c₅`.
pub const UNKNOWNS: [&str; 6] = ["p_123", "q_013", "q_113", "q_213", "p_212", "p_211"];

/// Window used for the ten-zero configuration.
pub const TEN_ZERO_WINDOW: f64 = 0.06;

fn params(names: &[&str]) -> Vec<Param> {
    names.iter().map(|n| n.parse().expect("parameter name")).collect()
}

/// Third-order Melnikov function of the family with vanishing M₁ and M₂,
/// together with the base point where its first six coefficients vanish.
#[derive(Clone, Debug)]
pub struct Construction {
    pub family: PerturbationSet,
    pub melnikov: ReducedIntegral,
    pub unknowns: Vec<Param>,
    pub base: BTreeMap<Param, Frac>,
}

impl Construction {
    pub fn third_order() -> Result<Construction> {
        let fixed = FIXED.iter().map(|&(n, v)| (n.parse().expect("parameter name"), Frac::from_integer(v.into())));
        Construction::third_order_at(&fixed.collect())
    }

    /// Solves `c₀ = … = c₅ = 0` for [`UNKNOWNS`] at the given fixed values.
    pub fn third_order_at(fixed: &BTreeMap<Param, Frac>) -> Result<Construction> {
        let family = PerturbationSet::third_order_family();
        let melnikov = melnikov_3(&family)?;
        let unknowns = params(&UNKNOWNS);
        let coeffs = coeff_list(&melnikov, Side::Plus, unknowns.len());
        let solution = solve_vanishing(&coeffs, &unknowns, fixed)?;
        let mut base = fixed.clone();
        for (p, r) in solution {
            let value = constant_of(&r.num)?.clone() / constant_of(&r.den)?;
            base.insert(p, value);
        }
        Ok(Construction { family, melnikov, unknowns, base })
    }

    pub fn k(&self) -> usize {
        self.unknowns.len()
    }

    /// `c₀ … c_k` on one side.
    pub fn coeffs(&self, side: Side) -> CoeffList {
        coeff_list(&self.melnikov, side, self.k() + 1)
    }

    /// The perturbation with every parameter assigned, missing ones set to zero.
    pub fn system(&self, point: &BTreeMap<Param, Frac>) -> PerturbationSet {
        let assigned = self.family.assign(point);
        let zeros: BTreeMap<Param, Frac> = assigned.params().into_iter().map(|p| (p, Frac::zero())).collect();
        assigned.assign(&zeros)
    }
}

fn constant_of(p: &ParamPoly) -> Result<Frac> {
    p.as_constant().ok_or_else(|| Error::Unassigned(p.params().first().map(|q| q.name()).unwrap_or_default()))
}

/// Requires `c_k ≠ 0` and a nonzero Jacobian of `c₀ … c_{k−1}` at `base`.
fn check_base(coeffs: &CoeffList, base: &BTreeMap<Param, Frac>, unknowns: &[Param]) -> Result<()> {
    let k = unknowns.len();
    if coeffs.len() != k + 1 {
        return Err(Error::Underdetermined { equations: coeffs.len().saturating_sub(1), unknowns: k });
    }
    let top = coeffs.rational(k).eval(base)?;
    if top.is_zero() {
        return Err(Error::DegenerateBase(format!("c{k} vanishes at the base point")));
    }
    let det = jacobian_det(&coeffs.first(k), unknowns, base)?;
    if !det.rational.as_constant().is_some_and(|d| !d.is_zero()) {
        return Err(Error::DegenerateBase("Jacobian determinant vanishes at the base point".into()));
    }
    Ok(())
}

/// Moves the unknowns so that the truncated expansion `Σ_{n≤k} cₙ|h|^{eₙ/6}`
/// on the side of `coeffs` vanishes at `|h| = sⱼ⁶` for the given
/// `locations` `s₀ < … < s_{k−1}`.
///
/// Target ratios `cⱼ/c_k` come from an exact Vandermonde solve in `s`; they
/// are converted to rational-part targets with the numeric symbol values,
/// and the resulting system `cⱼ − Kⱼ·c_k = 0` is linear in the unknowns.
/// `c_k` itself may move when it depends on the unknowns.
pub fn place_zeros(
    coeffs: &CoeffList,
    base: &BTreeMap<Param, Frac>,
    unknowns: &[Param],
    values: &SymbolValues,
    locations: &[Frac],
) -> Result<BTreeMap<Param, Frac>> {
    let k = unknowns.len();
    check_base(coeffs, base, unknowns)?;
    if locations.len() != k {
        return Err(Error::Config(format!("{} zero locations given for {k} unknowns", locations.len())));
    }
    if locations.iter().any(|s| !s.is_positive()) || locations.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("zero locations must be positive and increasing".into()));
    }
    // cⱼ sⁱ^{eⱼ} summed over j ≤ k vanishes at every node; c_k = 1
    let exps: Vec<i32> = (0..=k).map(|n| label_e6(n) as i32).collect();
    let matrix: Vec<Vec<Frac>> = locations.iter().map(|s| exps[..k].iter().map(|&e| pow(s, e)).collect()).collect();
    let rhs: Vec<ParamPoly> = locations.iter().map(|s| ParamPoly::constant(-pow(s, exps[k]))).collect();
    let ratios: Vec<Frac> = linear_solve(&matrix, &rhs)?.iter().map(constant_of).collect::<Result<_>>()?;

    // numeric weight of entry n at |h| = s⁶, sign of h included
    let sigma = |n: usize| values.get(symbol_for_label(n)) * power(coeffs.side.sign(), label_e6(n));
    let fixed: BTreeMap<Param, Frac> = base.iter().filter(|(p, _)| !unknowns.contains(p)).map(|(p, v)| (*p, v.clone())).collect();
    let c_top = coeffs.rational(k).eval_partial(&fixed);
    let equations: Vec<ParamPoly> = (0..k)
        .map(|j| {
            let target = from_f64(to_f64(&ratios[j]) * sigma(k) / sigma(j));
            &coeffs.rational(j).eval_partial(&fixed) - &c_top.scale(&target)
        })
        .collect();
    let solution = solve_linear(&equations, unknowns)?;
    let mut point = base.clone();
    for (p, r) in solution {
        point.insert(p, constant_of(&r.num)? / constant_of(&r.den)?);
    }
    check_alternation(coeffs, &point, values)?;
    Ok(point)
}

fn pow(s: &Frac, e: i32) -> Frac {
    num_traits::pow(s.clone(), e as usize)
}

fn check_alternation(coeffs: &CoeffList, point: &BTreeMap<Param, Frac>, values: &SymbolValues) -> Result<()> {
    let c = NumericSeries::from_exact(coeffs, values, point)?.coefficients();
    if c.windows(2).all(|w| w[0] * w[1] < 0.0) {
        Ok(())
    } else {
        Err(Error::DegenerateBase("coefficients failed to alternate in sign".into()))
    }
}

/// Places the zeros geometrically, `sⱼ = ratio^{k−j}`, so that the
/// coefficients alternate in sign and shrink towards `c₀`. A zero ratio
/// returns the base point.
pub fn alternate_params(
    coeffs: &CoeffList,
    base: &BTreeMap<Param, Frac>,
    unknowns: &[Param],
    values: &SymbolValues,
    ratio: &Frac,
) -> Result<BTreeMap<Param, Frac>> {
    check_base(coeffs, base, unknowns)?;
    if ratio.is_zero() {
        return Ok(base.clone());
    }
    if ratio.is_negative() || *ratio >= Frac::one() {
        return Err(Error::Config("ratio must lie in [0, 1)".into()));
    }
    let k = unknowns.len();
    let locations: Vec<Frac> = (0..k).map(|j| pow(ratio, (k - j) as i32)).collect();
    place_zeros(coeffs, base, unknowns, values, &locations)
}

/// Zero locations in `s = |h|^{1/6}` for the six-plus-four configuration:
/// clustered at the bottom so that all ten zeros fit in `[SCAN_FLOOR, TEN_ZERO_WINDOW]`.
pub fn ten_zero_layout() -> Vec<Frac> {
    [68, 89, 96, 104, 604, 1000].iter().map(|&n| frac(n, 1000) * frac(6, 25)).collect()
}

/// The ten-zero point of [`Construction::third_order`] and the reports for both sides.
pub fn ten_zero_configuration(
    construction: &Construction,
    plus: &SymbolValues,
    minus: &SymbolValues,
) -> Result<(BTreeMap<Param, Frac>, ZeroReport, ZeroReport)> {
    let coeffs = construction.coeffs(Side::Plus);
    let point = place_zeros(&coeffs, &construction.base, &construction.unknowns, plus, &ten_zero_layout())?;
    let plus_series = NumericSeries::from_exact(&coeffs, plus, &point)?;
    let minus_series = NumericSeries::from_exact(&construction.coeffs(Side::Minus), minus, &point)?;
    Ok((point, count_zeros(&plus_series, TEN_ZERO_WINDOW), count_zeros(&minus_series, TEN_ZERO_WINDOW)))
}

/// First-order point `Q₁ = x y + q₂₁₁ x² y` whose M₁⁺ = I₁₁ + q₂₁₁ I₂₁
/// vanishes at `h0 > 0`.
pub fn first_order_zero_point(h0: f64, rel_tol: f64) -> Result<BTreeMap<Param, Frac>> {
    let i11 = crate::oracle::abelian_numeric(1, 1, h0, Side::Plus, rel_tol)?;
    let i21 = crate::oracle::abelian_numeric(2, 1, h0, Side::Plus, rel_tol)?;
    Ok(BTreeMap::from([(Param::q(1, 1, 1), Frac::one()), (Param::q(2, 1, 1), from_f64(-i11 / i21))]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values() -> (SymbolValues, SymbolValues) {
        let c = crate::oracle::constants(1e-12).unwrap();
        (c.symbol_values(Side::Plus), c.symbol_values(Side::Minus))
    }

    #[test]
    fn base_point_values() {
        let c = Construction::third_order().unwrap();
        let get = |n: &str| c.base[&n.parse::<Param>().unwrap()].clone();
        // p_123 = 5/891 p021 p031 p111 + 10/891 p021 p031 q021 − 3 q033
        assert_eq!(get("p_123"), frac(15, 891));
        assert_eq!(get("p_211"), frac(10, 33));
        let coeffs = c.coeffs(Side::Plus);
        for n in 0..6 {
            assert!(coeffs.rational(n).eval(&c.base).unwrap().is_zero());
        }
        assert_eq!(coeffs.rational(6).eval(&c.base).unwrap(), frac(-160, 99));
    }

    #[test]
    fn ratio_zero_is_identity_and_signs_alternate() {
        let c = Construction::third_order().unwrap();
        let (plus, _) = values();
        let coeffs = c.coeffs(Side::Plus);
        let same = alternate_params(&coeffs, &c.base, &c.unknowns, &plus, &Frac::zero()).unwrap();
        assert_eq!(same, c.base);
        let point = alternate_params(&coeffs, &c.base, &c.unknowns, &plus, &frac(1, 100)).unwrap();
        let s = NumericSeries::from_exact(&coeffs, &plus, &point).unwrap().coefficients();
        // c₆ = −160/99·b₁ at the base and b₁ < 0 on this side
        assert!(plus.b1 < 0.0 && s[6] > 0.0);
        for j in 0..6 {
            assert!(s[j] * s[j + 1] < 0.0, "c{j}");
        }
    }

    #[test]
    fn degenerate_base_is_rejected() {
        let c = Construction::third_order().unwrap();
        let (plus, _) = values();
        let mut base = c.base.clone();
        base.insert("p_021".parse().unwrap(), Frac::zero());
        let r = alternate_params(&c.coeffs(Side::Plus), &base, &c.unknowns, &plus, &frac(1, 100));
        assert!(matches!(r, Err(Error::DegenerateBase(_))));
    }
}

//! Melnikov functions of orders one to three, their expansion coefficients
//! at the loop, and the vanishing conditions on the perturbation parameters.

pub mod coeffs;
pub mod francoise;

use std::collections::{BTreeMap, BTreeSet};

pub use coeffs::{coeff_list, jacobian_det, solve_vanishing, CoeffList, JacobianDet};
pub use francoise::{francoise_decompose, FrancoiseStep};

use crate::algebra::frac::Frac;
use crate::algebra::{poly, OneForm, Param, ParamPoly, PlanePoly};
use crate::error::{Error, Result};
use crate::reduction::{reduce_form, ReducedIntegral};

/// The perturbation `ẋ = H_y + Σ εᵏPₖ`, `ẏ = −H_x + Σ εᵏQₖ`, k = 1, 2, 3.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationSet {
    pub p: [PlanePoly; 3],
    pub q: [PlanePoly; 3],
}

impl PerturbationSet {
    pub fn zero() -> PerturbationSet {
        PerturbationSet { p: Default::default(), q: Default::default() }
    }

    /// Every coefficient `p_ijk`, `q_ijk` symbolic.
    pub fn general() -> PerturbationSet {
        let p = std::array::from_fn(|k| PlanePoly::cubic(|i, j| ParamPoly::var(Param::p(i, j, k as u32 + 1))));
        let q = std::array::from_fn(|k| PlanePoly::cubic(|i, j| ParamPoly::var(Param::q(i, j, k as u32 + 1))));
        PerturbationSet { p, q }
    }

    /// First- and second-order terms chosen so that M₁ and M₂ vanish, with
    /// fully general third-order terms.
    pub fn third_order_family() -> PerturbationSet {
        let mut ps = PerturbationSet::general();
        let kappa = poly("2*q_021 + p_111");
        let mut p1 = PlanePoly::zero();
        p1.add_term(0, 3, poly("p_031"));
        p1.add_term(2, 1, poly("p_211"));
        p1.add_term(0, 2, poly("p_021"));
        p1.add_term(1, 1, poly("p_111"));
        let mut q1 = PlanePoly::zero();
        q1.add_term(1, 2, poly("-p_211"));
        q1.add_term(0, 2, poly("q_021"));
        let mut p2 = PlanePoly::zero();
        p2.add_term(1, 2, &poly("p_021") * &kappa);
        p2.add_term(2, 1, poly("p_212"));
        ps.p[0] = p1;
        ps.q[0] = q1;
        ps.p[1] = p2;
        ps.q[1] = PlanePoly::zero();
        ps
    }

    /// `ωₖ = Qₖ dx − Pₖ dy`.
    pub fn form(&self, k: usize) -> OneForm {
        OneForm::new(self.q[k - 1].clone(), self.p[k - 1].clone())
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> PerturbationSet {
        PerturbationSet {
            p: std::array::from_fn(|k| self.p[k].map_coeffs(&f)),
            q: std::array::from_fn(|k| self.q[k].map_coeffs(&f)),
        }
    }

    pub fn substitute(&self, subs: &BTreeMap<Param, ParamPoly>) -> PerturbationSet {
        self.map_coeffs(|c| c.compose(subs))
    }

    pub fn assign(&self, values: &BTreeMap<Param, Frac>) -> PerturbationSet {
        self.map_coeffs(|c| c.eval_partial(values))
    }

    /// Parameters still appearing symbolically.
    pub fn params(&self) -> BTreeSet<Param> {
        let mut out = BTreeSet::new();
        for poly in self.p.iter().chain(&self.q) {
            for (_, c) in poly.terms() {
                out.extend(c.params());
            }
        }
        out
    }
}

fn subs(pairs: &[(&str, &str)]) -> BTreeMap<Param, ParamPoly> {
    pairs.iter().map(|(k, v)| (k.parse::<Param>().expect("parameter name"), poly(v))).collect()
}

/// Substitution making M₁ vanish identically.
pub fn first_order_vanishing() -> BTreeMap<Param, ParamPoly> {
    subs(&[("p_121", "-3*q_031"), ("q_011", "-p_101"), ("q_111", "-2*p_201"), ("q_211", "-3*p_301")])
}

/// The three families (on top of [`first_order_vanishing`]) on which M₂
/// vanishes identically; `n` is 1, 2 or 3.
pub fn second_order_vanishing(n: usize) -> BTreeMap<Param, ParamPoly> {
    match n {
        1 => subs(&[
            ("p_111", "-2*q_021"),
            ("p_122", "-3*q_032"),
            ("q_012", "-p_102"),
            ("q_112", "-2*p_202"),
            ("q_121", "-p_211"),
            ("q_212", "-3*p_302"),
        ]),
        2 => subs(&[
            ("p_122", "p_021*(p_111 + 2*q_021) - 3*q_032"),
            ("q_012", "-p_102"),
            ("q_031", "0"),
            ("q_112", "p_101*(p_111 + 2*q_021) - 2*p_202"),
            ("q_121", "-p_211"),
            ("q_212", "(p_201 + p_301)*(p_111 + 2*q_021) - 3*p_302"),
        ]),
        3 => subs(&[
            ("p_021", "0"),
            ("p_122", "2*p_301*(p_211 + q_121) - 3*q_032"),
            ("q_012", "-p_102"),
            ("q_031", "0"),
            ("q_112", "p_101*(p_111 + 2*q_021) - 2*p_202"),
            (
                "q_212",
                "2*p_101*(p_211 + q_121) + 2*(p_201 + p_301)*(p_211 + q_021 + q_121) + p_111*(p_201 + p_301) - 3*p_302",
            ),
        ]),
        _ => panic!("there are three second-order families, not {n}"),
    }
}

/// The one-form whose integral is Mₖ, with the decompositions used on the way.
///
/// `ω̃₁ = ω₁`, and for `k ≥ 2`, `ω̃ₖ = ωₖ + Σ_{i<k} rᵢ·ω_{k−i}` where
/// `ω̃ᵢ = rᵢ dH + dRᵢ`.
pub fn corrected_form(ps: &PerturbationSet, order: usize) -> Result<(OneForm, Vec<FrancoiseStep>)> {
    if !(1..=3).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    let mut steps: Vec<FrancoiseStep> = Vec::new();
    let mut form = ps.form(1);
    for k in 2..=order {
        if !reduce_form(&form).is_zero() {
            return Err(if order == 2 { Error::FirstOrderNonzero } else { Error::LowerOrderNonzero { order: k - 1 } });
        }
        steps.push(francoise_decompose(&form)?);
        form = ps.form(k);
        for (i, step) in steps.iter().enumerate() {
            form = form.add(&ps.form(k - 1 - i).mul_poly(&step.r));
        }
    }
    Ok((form, steps))
}

pub fn melnikov(ps: &PerturbationSet, order: usize) -> Result<ReducedIntegral> {
    Ok(reduce_form(&corrected_form(ps, order)?.0))
}

pub fn melnikov_1(ps: &PerturbationSet) -> ReducedIntegral {
    reduce_form(&ps.form(1))
}

pub fn melnikov_2(ps: &PerturbationSet) -> Result<ReducedIntegral> {
    melnikov(ps, 2)
}

pub fn melnikov_3(ps: &PerturbationSet) -> Result<ReducedIntegral> {
    melnikov(ps, 3)
}

/// `(B₁, B₂, …)`: the h-polynomial coefficients of a reduced integral, listed
/// component by component.
pub fn h_coefficients(r: &ReducedIntegral) -> Vec<ParamPoly> {
    r.components().iter().flat_map(|p| p.coeffs().iter().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::reduce_monomial;

    fn basis_sum(terms: &[(ParamPoly, ReducedIntegral)]) -> ReducedIntegral {
        terms.iter().fold(ReducedIntegral::zero(), |acc, (c, r)| acc.add(&r.mul_param(c)))
    }

    #[test]
    fn first_order_in_terms_of_four_integrals() {
        let m1 = melnikov_1(&PerturbationSet::general());
        let expected = basis_sum(&[
            (poly("p_101 + q_011"), reduce_monomial(0, 1)),
            (poly("2*p_201 + q_111"), reduce_monomial(1, 1)),
            (poly("3*p_301 + q_211"), reduce_monomial(2, 1)),
            (poly("1/3*p_121 + q_031"), reduce_monomial(0, 3)),
        ]);
        assert_eq!(m1, expected);
        assert!(melnikov_1(&PerturbationSet::zero()).is_zero());
        assert!(melnikov_1(&PerturbationSet::general().substitute(&first_order_vanishing())).is_zero());
    }

    #[test]
    fn first_order_multiplier() {
        let ps = PerturbationSet::general().substitute(&first_order_vanishing());
        let (_, steps) = corrected_form(&ps, 2).unwrap();
        let mut r1 = PlanePoly::zero();
        r1.add_term(1, 0, poly("-p_111 - 2*q_021"));
        r1.add_term(2, 0, poly("-p_211 - q_121"));
        assert_eq!(steps[0].r, r1);
        assert!(steps[0].residual(&ps.form(1)).is_zero());
    }

    #[test]
    fn higher_orders_require_vanishing_lower_orders() {
        let ps = PerturbationSet::general();
        assert_eq!(melnikov_2(&ps), Err(Error::FirstOrderNonzero));
        assert_eq!(melnikov_3(&ps), Err(Error::LowerOrderNonzero { order: 1 }));
        let ps = ps.substitute(&first_order_vanishing());
        assert_eq!(melnikov_3(&ps), Err(Error::LowerOrderNonzero { order: 2 }));
        assert_eq!(melnikov(&ps, 4), Err(Error::UnsupportedOrder(4)));
    }

    #[test]
    fn zero_perturbation() {
        assert!(melnikov_3(&PerturbationSet::zero()).unwrap().is_zero());
    }
}

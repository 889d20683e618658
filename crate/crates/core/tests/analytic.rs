//! Numerical checks of the exact machinery: Picard–Fuchs residual,
//! reductions against quadrature, and Melnikov expansions against the
//! integrals of the corrected one-forms.

use std::collections::BTreeMap;

use cusploop::algebra::frac::{frac, Frac};
use cusploop::algebra::Param;
use cusploop::cycles::NumericSeries;
use cusploop::melnikov::{coeff_list, corrected_form, first_order_vanishing, melnikov, PerturbationSet};
use cusploop::oracle::{abelian_numeric, constants, form_numeric};
use cusploop::picard_fuchs::pf_system;
use cusploop::reduction::reduce_monomial;
use cusploop::Side;
use proptest::prelude::*;

const TOL: f64 = 1e-13;

fn side_of(h: f64) -> Side {
    if h > 0.0 {
        Side::Plus
    } else {
        Side::Minus
    }
}

fn basis(h: f64) -> [f64; 3] {
    std::array::from_fn(|k| abelian_numeric(k as u32, 1, h, side_of(h), TOL).unwrap())
}

#[test]
fn basis_integrals_satisfy_the_picard_fuchs_system() {
    let pf = pf_system();
    for h in [0.01, 0.05, 0.3, -0.01, -0.05] {
        let d = 1e-4 * f64::abs(h);
        let (up, down) = (basis(h + d), basis(h - d));
        let x = basis(h);
        let rhs = pf.apply_f64(h, x);
        for k in 0..3 {
            let lhs = pf.p_f64(h) * (up[k] - down[k]) / (2.0 * d);
            assert!((lhs - rhs[k]).abs() <= 1e-6 * rhs[k].abs().max(x[k].abs()), "h={h} k={k}: {lhs} vs {}", rhs[k]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reductions_agree_with_quadrature(i in 0u32..8, j in prop::sample::select(vec![1u32, 3, 5]), t in 0.0f64..1.0, plus in any::<bool>()) {
        let h = if plus { 1e-3 + 0.2 * t } else { -(1e-3 + 0.08 * t) };
        let side = side_of(h);
        let none = BTreeMap::new();
        let b = basis(h);
        let r = reduce_monomial(i, j);
        let reduced: f64 = r.components().iter().zip(b).map(|(p, v)| p.eval_f64(h, &none).unwrap() * v).sum();
        let direct = abelian_numeric(i, j, h, side, TOL).unwrap();
        prop_assert!((reduced - direct).abs() <= 1e-9 * direct.abs(), "I{}{} at {}: {} vs {}", i, j, h, reduced, direct);
    }
}

fn point(values: &[i64], ps: impl Iterator<Item = Param>) -> BTreeMap<Param, Frac> {
    ps.zip(values.iter().cycle()).map(|(p, &v)| (p, frac(v, 3))).collect()
}

/// The expansion of Mₖ with ten coefficients against quadrature of the
/// corrected k-th order form, at a numeric point of `family`.
fn check_order(family: &PerturbationSet, k: usize, values: &[i64]) {
    let params: Vec<Param> = family.params().into_iter().collect();
    let pt = point(values, params.into_iter());
    let assigned = family.assign(&pt);
    let m = melnikov(family, k).unwrap();
    let (form, _) = corrected_form(&assigned, k).unwrap();
    let none = BTreeMap::new();
    let (q, p) = (form.q_part.to_numeric(&none).unwrap(), form.p_part.to_numeric(&none).unwrap());
    let c = constants(1e-12).unwrap();
    for h in [1e-3, -1e-3, 4e-3, -4e-3] {
        let side = side_of(h);
        let series = NumericSeries::from_exact(&coeff_list(&m, side, 16), &c.symbol_values(side), &pt).unwrap();
        let scale: f64 = series.terms.iter().map(|&(e6, v)| (v * cusploop::picard_fuchs::power(h, e6)).abs()).sum();
        let quad = form_numeric(&q, &p, h, side, TOL).unwrap();
        let s = series.eval_abs(h.abs());
        assert!((s - quad).abs() <= 1e-7 * scale.max(1e-12), "M{k} at h={h}: {s} vs {quad}");
    }
}

#[test]
fn first_order_expansion_matches_quadrature() {
    check_order(&PerturbationSet::general(), 1, &[1, -2, 3, 2, -1, 4, -3]);
}

#[test]
fn second_order_expansion_matches_quadrature() {
    let family = PerturbationSet::general().substitute(&first_order_vanishing());
    check_order(&family, 2, &[2, -1, 1, 3, -2, -3, 1, 4]);
}

#[test]
fn third_order_expansion_matches_quadrature() {
    check_order(&PerturbationSet::third_order_family(), 3, &[1, 2, -1, 3, -2, 1, 2]);
}

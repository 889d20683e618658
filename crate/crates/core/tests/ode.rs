use std::collections::BTreeMap;

use cusploop::algebra::frac::{frac, to_f64};
use cusploop::algebra::{Frac, Param};
use cusploop::cycles::ode::general_system;
use cusploop::cycles::{displacement, first_order_zero_point};
use cusploop::melnikov::PerturbationSet;
use cusploop::oracle::form_numeric;
use cusploop::picard_fuchs::Side;

fn generic_point() -> BTreeMap<Param, Frac> {
    [("p_101", frac(1, 2)), ("q_111", frac(1, 1)), ("p_021", frac(1, 3)), ("q_031", frac(-1, 5)), ("q_211", frac(2, 7))]
        .into_iter()
        .map(|(n, v)| (n.parse().unwrap(), v))
        .collect()
}

/// M₁ by quadrature of `Q₁ dx − P₁ dy` around the oval.
fn m1(system: &PerturbationSet, h: f64, side: Side) -> f64 {
    let none = BTreeMap::new();
    let q = system.q[0].to_numeric(&none).unwrap();
    let p = system.p[0].to_numeric(&none).unwrap();
    form_numeric(&q, &p, h, side, 1e-12).unwrap()
}

#[test]
fn displacement_over_epsilon_matches_first_order() {
    let point = generic_point();
    let system = general_system(&point);
    for (h, side) in [(0.01, Side::Plus), (-0.01, Side::Minus), (0.003, Side::Plus)] {
        let eps = 1e-5;
        let d = displacement(&point, eps, h, side).unwrap();
        let m = m1(&system, h, side);
        assert!((d.displacement / eps / m - 1.0).abs() < 0.01, "h = {h}: {} vs {m}", d.displacement / eps);
    }
}

#[test]
fn displacement_is_linear_in_small_epsilon() {
    let point = generic_point();
    let a = displacement(&point, 1e-4, 0.01, Side::Plus).unwrap().displacement / 1e-4;
    let b = displacement(&point, 5e-5, 0.01, Side::Plus).unwrap().displacement / 5e-5;
    assert!((a - b).abs() <= 1e-2 * a.abs());
}

#[test]
fn displacement_changes_sign_near_a_first_order_zero() {
    let h0 = 0.005;
    let point = first_order_zero_point(h0, 1e-12).unwrap();
    assert!(to_f64(&point[&Param::q(2, 1, 1)]) < 0.0);
    let lo = displacement(&point, 1e-4, 0.8 * h0, Side::Plus).unwrap().displacement;
    let hi = displacement(&point, 1e-4, 1.2 * h0, Side::Plus).unwrap().displacement;
    assert!(lo * hi < 0.0, "{lo} {hi}");
}

use std::collections::BTreeMap;

use cusploop::oracle::{abelian_numeric, constants};
use cusploop::picard_fuchs::{basis_expansion, Basis};
use cusploop::Side;

#[test]
fn truncated_series_match_quadrature() {
    let c = constants(1e-12).unwrap();
    let none = BTreeMap::new();
    for side in [Side::Plus, Side::Minus] {
        let values = c.symbol_values(side);
        for b in Basis::ALL {
            let e = basis_expansion(b, side, 4);
            for mag in [1e-3, 1e-2, 1e-4] {
                let h = side.sign() * mag;
                let series = e.eval(h, &values, &none).unwrap();
                let quad = abelian_numeric(b.index() as u32, 1, h, side, 1e-12).unwrap();
                assert!(((series - quad) / quad).abs() < 1e-5, "{side} {b:?} h={h:e}: {series} vs {quad}");
            }
        }
    }
}

/// At |h| = 1e-6 the |h|^{5/6} and |h|^{7/6} terms move I01 by ~1e-4 relative to
/// its limit, far above 1e-8; the quadrature value shows that offset.
#[test]
fn offset_from_the_limit_is_the_leading_fractional_terms() {
    let c = constants(1e-12).unwrap();
    let limit = 4.0 * std::f64::consts::SQRT_2 * std::f64::consts::PI / 27.0;
    for (side, b0, b1) in [(Side::Plus, c.b0_plus, c.b1_plus), (Side::Minus, c.b0_minus, c.b1_minus)] {
        let h = side.sign() * 1e-6;
        let offset = abelian_numeric(0, 1, h, side, 1e-12).unwrap() - limit;
        let predicted = -2.0 * b0 * 1e-6f64.powf(5.0 / 6.0) + b1 * 1e-6f64.powf(7.0 / 6.0);
        assert!((offset / predicted - 1.0).abs() < 1e-3, "{offset} vs {predicted}");
        assert!((offset / limit).abs() > 1e-5);
    }
}

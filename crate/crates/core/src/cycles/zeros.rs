//! Sign-change scan of a truncated expansion on a logarithmic grid.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::frac::{to_f64, Frac};
use crate::algebra::{Param, SymbolValues};
use crate::error::Result;
use crate::melnikov::CoeffList;
use crate::oracle::bisect;
use crate::picard_fuchs::{label_e6, power, Side};

/// Smallest |h| visited by the scan.
pub const SCAN_FLOOR: f64 = 1e-12;

pub const POINTS_PER_DECADE: usize = 200;

/// `Σ cₙ |h|^{eₙ/6}` with numeric coefficients (symbol values included).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericSeries {
    pub side: Side,
    /// `(e6, coefficient)` in increasing exponent order.
    pub terms: Vec<(u32, f64)>,
}

impl NumericSeries {
    pub fn new(side: Side, terms: Vec<(u32, f64)>) -> NumericSeries {
        NumericSeries { side, terms }
    }

    /// Evaluates the rational parts exactly at `point` before rounding, so
    /// that tiny coefficients produced by cancellation keep full precision.
    pub fn from_exact(coeffs: &CoeffList, values: &SymbolValues, point: &BTreeMap<Param, Frac>) -> Result<NumericSeries> {
        let mut terms = Vec::with_capacity(coeffs.len());
        for n in 0..coeffs.len() {
            let exact = coeffs.get(n);
            let mut c = 0.0;
            for symbol in exact.support() {
                c += to_f64(&exact.get(symbol).eval(point)?) * values.get(symbol);
            }
            terms.push((label_e6(n), c));
        }
        Ok(NumericSeries::new(coeffs.side, terms))
    }

    pub fn from_f64(coeffs: &CoeffList, values: &SymbolValues, params: &BTreeMap<Param, f64>) -> Result<NumericSeries> {
        let c = coeffs.eval_f64(values, params)?;
        Ok(NumericSeries::new(coeffs.side, (0..c.len()).map(|n| (label_e6(n), c[n])).collect()))
    }

    pub fn coefficients(&self) -> Vec<f64> {
        self.terms.iter().map(|&(_, c)| c).collect()
    }

    /// Value at the level of absolute value `a` on this side.
    pub fn eval_abs(&self, a: f64) -> f64 {
        let h = self.side.sign() * a;
        self.terms.iter().map(|&(e6, c)| c * power(h, e6)).sum()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct Zero {
    /// Signed level: negative on the minus side.
    pub location: f64,
    /// `+1` when the expansion turns positive as |h| grows.
    pub sign_change: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroReport {
    pub side: Side,
    pub window: (f64, f64),
    pub zeros: Vec<Zero>,
    pub count: usize,
}

impl ZeroReport {
    pub fn locations(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z.location).collect()
    }
}

pub fn count_zeros(series: &NumericSeries, h_star: f64) -> ZeroReport {
    count_zeros_with(series, h_star, POINTS_PER_DECADE)
}

/// Scans `|h| ∈ [SCAN_FLOOR, h_star]` with `per_decade` log-spaced points
/// and refines each sign change by bisection.
pub fn count_zeros_with(series: &NumericSeries, h_star: f64, per_decade: usize) -> ZeroReport {
    let side = series.side;
    let window = match side {
        Side::Plus => (0.0, h_star),
        Side::Minus => (-h_star, 0.0),
    };
    let mut zeros = Vec::new();
    if h_star > SCAN_FLOOR {
        let lo = SCAN_FLOOR.log10();
        let hi = h_star.log10();
        let n = ((hi - lo) * per_decade.max(1) as f64).ceil() as usize;
        let grid = |k: usize| if k == n { h_star } else { 10f64.powf(lo + (hi - lo) * k as f64 / n as f64) };
        let f = |a: f64| series.eval_abs(a);
        let mut a = grid(0);
        let mut fa = f(a);
        for k in 1..=n {
            let b = grid(k);
            let fb = f(b);
            if fa != 0.0 && fb != 0.0 && fa.signum() != fb.signum() {
                let root = bisect(f, a, b).unwrap_or(0.5 * (a + b));
                let sign_change = if fb > 0.0 { 1 } else { -1 };
                zeros.push(Zero { location: side.sign() * root, sign_change });
            }
            if fb != 0.0 {
                a = b;
                fa = fb;
            }
        }
    }
    let count = zeros.len();
    ZeroReport { side, window, zeros, count }
}

/// Largest window `h_star·10^{−m}` on which the omitted term `next` stays
/// below half of every retained contribution; `None` above the scan floor.
pub fn dominance_window(series: &NumericSeries, next: (u32, f64), h_star: f64) -> Option<f64> {
    let mut w = h_star;
    while w >= SCAN_FLOOR {
        let tail = next.1.abs() * power(w, next.0);
        let smallest = series
            .terms
            .iter()
            .filter(|t| t.1 != 0.0)
            .map(|&(e6, c)| c.abs() * power(w, e6))
            .fold(f64::INFINITY, f64::min);
        if tail < 0.5 * smallest {
            return Some(w);
        }
        w /= 10.0;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_sign_terms_have_no_zero() {
        let s = NumericSeries::new(Side::Plus, vec![(0, 1.0), (5, 2.0), (6, 0.5)]);
        assert_eq!(count_zeros(&s, 1e-2).count, 0);
    }

    #[test]
    fn locates_a_planted_zero() {
        // 1 − 10 |h|^{5/6} vanishes at |h| = 10^{-6/5}
        let s = NumericSeries::new(Side::Minus, vec![(0, 1.0), (5, -10.0)]);
        let r = count_zeros(&s, 0.08);
        assert_eq!(r.count, 1);
        let z = r.zeros[0];
        assert!((z.location + 10f64.powf(-1.2)).abs() < 1e-14);
        assert_eq!(z.sign_change, -1);
        assert_eq!(r.window, (-0.08, 0.0));
    }

    #[test]
    fn zeros_are_ordered_and_in_window() {
        // (t − 1/10)(t − 1/20) in t = h^{1/6}
        let s = NumericSeries::new(Side::Plus, vec![(5, 0.005), (6, -0.15), (7, 1.0)]);
        let r = count_zeros(&s, 1e-2);
        assert_eq!(r.count, 2);
        assert!(r.zeros[0].location < r.zeros[1].location && r.zeros[1].location <= 1e-2);
        assert!((r.zeros[0].location / 0.05f64.powi(6) - 1.0).abs() < 1e-12);
        assert!((r.zeros[1].location / 1e-6 - 1.0).abs() < 1e-12);
        assert_eq!((r.zeros[0].sign_change, r.zeros[1].sign_change), (-1, 1));
    }

    #[test]
    fn dominance_shrinks_the_window() {
        let s = NumericSeries::new(Side::Plus, vec![(0, 1.0)]);
        assert_eq!(dominance_window(&s, (6, 1.0), 1e-2), Some(1e-2));
        assert_eq!(dominance_window(&s, (6, 1e3), 1e-2), Some(1e-4));
        assert_eq!(dominance_window(&s, (6, 1e30), 1e-2), None);
    }
}

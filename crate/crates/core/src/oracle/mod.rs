//! Floating-point evaluation of oval integrals by quadrature.

pub mod constants;
pub mod quad;

use std::f64::consts::{FRAC_PI_2, PI};

pub use constants::{constants, Constants};

use crate::error::{Error, Result};
use crate::picard_fuchs::Side;

pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// `y² = 2h + (2/3)x³ − (1/2)x⁴` on the level `H = h`.
pub fn level_poly(h: f64, x: f64) -> f64 {
    2.0 * h + x * x * x * (2.0 / 3.0 - 0.5 * x)
}

/// Bisection for a sign change of `f` on `[a, b]`, down to adjacent floats.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::RootNotFound(0.5 * (a + b)));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a.min(b) || m >= a.max(b) {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// The closed level curve `H = h` on one side of the loop.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Oval {
    pub side: Side,
    pub h: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    // y² = (x − x_lo)(x_hi − x)·(x² + alpha·x + beta)/2
    alpha: f64,
    beta: f64,
}

pub fn check_level(h: f64, side: Side) -> Result<()> {
    let ok = match side {
        Side::Plus => h > 0.0 && h.is_finite(),
        Side::Minus => h < 0.0 && h > -1.0 / 12.0,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfRange { h, side })
    }
}

/// The two real roots of `y² = 0` bounding the oval.
pub fn oval_endpoints(h: f64, side: Side) -> Result<(f64, f64)> {
    check_level(h, side)?;
    let f = |x: f64| level_poly(h, x);
    match side {
        Side::Plus => {
            let mut left = -1.0;
            while f(left) > 0.0 {
                left *= 2.0;
                if left < -1e6 {
                    return Err(Error::RootNotFound(left));
                }
            }
            let mut right = 2.0;
            while f(right) > 0.0 {
                right *= 2.0;
                if right > 1e6 {
                    return Err(Error::RootNotFound(right));
                }
            }
            Ok((bisect(f, left, 0.0)?, bisect(f, 4.0 / 3.0, right)?))
        }
        Side::Minus => Ok((bisect(f, 0.0, 1.0)?, bisect(f, 1.0, 4.0 / 3.0)?)),
    }
}

impl Oval {
    pub fn new(h: f64, side: Side) -> Result<Oval> {
        let (x_lo, x_hi) = oval_endpoints(h, side)?;
        let s = x_lo + x_hi;
        let p = x_lo * x_hi;
        let alpha = s - 4.0 / 3.0;
        let beta = s * alpha - p;
        Ok(Oval { side, h, x_lo, x_hi, alpha, beta })
    }

    pub fn width(&self) -> f64 {
        self.x_hi - self.x_lo
    }

    fn deflated(&self, x: f64) -> f64 {
        0.5 * (x * x + self.alpha * x + self.beta)
    }

    /// Point of the oval at angle `θ ∈ [0, π]` and its velocity, with
    /// `x = x_lo + (x_hi − x_lo)·sin²θ`. The upper arc is `θ < π/2`, traversed
    /// towards increasing `x`.
    pub fn point(&self, theta: f64) -> ([f64; 2], [f64; 2]) {
        let l = self.width();
        let (s, c) = theta.sin_cos();
        let x = self.x_lo + l * s * s;
        let g = self.deflated(x).max(0.0);
        let root = g.sqrt();
        let dx = 2.0 * l * s * c;
        let dg = 0.5 * (2.0 * x + self.alpha) * dx;
        let y = l * s * c * root;
        let dy = l * (c * c - s * s) * root + if root > 0.0 { l * s * c * dg / (2.0 * root) } else { 0.0 };
        ([x, y], [dx, dy])
    }
}

/// `∮ x^i y^j dx`, oriented so that `∮ y dx > 0`; zero for even `j`.
pub fn abelian_numeric(i: u32, j: u32, h: f64, side: Side, rel_tol: f64) -> Result<f64> {
    check_level(h, side)?;
    if j % 2 == 0 {
        return Ok(0.0);
    }
    let oval = Oval::new(h, side)?;
    let integrand = |theta: f64| {
        let ([x, y], [dx, _]) = oval.point(theta);
        x.powi(i as i32) * y.powi(j as i32) * dx
    };
    let r = quad::integrate(integrand, 0.0, FRAC_PI_2, rel_tol, 0.0)?;
    Ok(2.0 * r.value)
}

/// A numeric plane polynomial `Σ c·x^i·y^j`.
pub type NumPoly = [((u32, u32), f64)];

pub fn eval_num(p: &NumPoly, x: f64, y: f64) -> f64 {
    p.iter().map(|&((i, j), c)| c * x.powi(i as i32) * y.powi(j as i32)).sum()
}

/// `∮ Q dx − P dy` as a line integral around the whole oval, with the same
/// orientation as [`abelian_numeric`].
pub fn form_numeric(q: &NumPoly, p: &NumPoly, h: f64, side: Side, rel_tol: f64) -> Result<f64> {
    let oval = Oval::new(h, side)?;
    let integrand = |theta: f64| {
        let ([x, y], [dx, dy]) = oval.point(theta);
        eval_num(q, x, y) * dx - eval_num(p, x, y) * dy
    };
    // Melnikov integrals may vanish, so an absolute floor is needed
    let abs_tol = rel_tol * 1e-6;
    let upper = quad::integrate(integrand, 0.0, FRAC_PI_2, rel_tol, abs_tol)?;
    let lower = quad::integrate(integrand, FRAC_PI_2, PI, rel_tol, abs_tol)?;
    Ok(upper.value + lower.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_roots() {
        for (h, side) in [(0.05, Side::Plus), (1e-6, Side::Plus), (-0.05, Side::Minus), (-1e-6, Side::Minus)] {
            let (lo, hi) = oval_endpoints(h, side).unwrap();
            assert!(level_poly(h, lo).abs() <= 1e-12 && level_poly(h, hi).abs() <= 1e-12);
            match side {
                Side::Plus => assert!(lo < 0.0 && hi > 4.0 / 3.0),
                Side::Minus => assert!(lo > 0.0 && lo < 1.0 && hi > 1.0 && hi < 4.0 / 3.0),
            }
        }
    }

    #[test]
    fn limiting_endpoints() {
        let (lo, hi) = oval_endpoints(-1e-15, Side::Minus).unwrap();
        assert!(lo < 1e-4 && (hi - 4.0 / 3.0).abs() < 1e-12);
        let (lo, hi) = oval_endpoints(-1.0 / 12.0 + 1e-12, Side::Minus).unwrap();
        assert!((lo - 1.0).abs() < 1e-5 && (hi - 1.0).abs() < 1e-5);
    }

    #[test]
    fn out_of_range_levels() {
        assert!(matches!(oval_endpoints(-0.01, Side::Plus), Err(Error::OutOfRange { .. })));
        assert!(matches!(oval_endpoints(0.01, Side::Minus), Err(Error::OutOfRange { .. })));
        assert!(matches!(oval_endpoints(-0.1, Side::Minus), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn even_powers_of_y_vanish() {
        assert_eq!(abelian_numeric(2, 2, 0.05, Side::Plus, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn area_near_the_center() {
        // near (1, 0) the oval is an ellipse with H ≈ −1/12 + (y² + (x−1)²)/2
        let d = 1e-6;
        let area = abelian_numeric(0, 1, -1.0 / 12.0 + d, Side::Minus, 1e-10).unwrap();
        assert!((area / (2.0 * PI * d) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn line_integral_matches_doubled_upper_half() {
        for (h, side) in [(0.05, Side::Plus), (-0.04, Side::Minus)] {
            let top = abelian_numeric(2, 3, h, side, 1e-12).unwrap();
            let full = form_numeric(&[((2, 3), 1.0)], &[], h, side, 1e-12).unwrap();
            assert!((top - full).abs() <= 1e-10 * top.abs());
        }
    }
}

//! Boundary constants of the expansions at the loop.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use serde::Serialize;

use super::quad::integrate;
use crate::algebra::SymbolValues;
use crate::error::Result;
use crate::picard_fuchs::Side;

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct Constants {
    pub b00_plus: f64,
    pub b00_minus: f64,
    pub b10_plus: f64,
    pub b10_minus: f64,
    pub b0_plus: f64,
    pub b0_minus: f64,
    pub b1_plus: f64,
    pub b1_minus: f64,
    pub rho1: f64,
    pub rho3: f64,
}

impl Constants {
    pub fn symbol_values(&self, side: Side) -> SymbolValues {
        let sqrt2pi = SQRT_2 * PI;
        match side {
            Side::Plus => SymbolValues { sqrt2pi, b0: self.b0_plus, b1: self.b1_plus },
            Side::Minus => SymbolValues { sqrt2pi, b0: self.b0_minus, b1: self.b1_minus },
        }
    }
}

fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    Ok(integrate(f, a, b, rel_tol, 0.0)?.value)
}

/// `∫₀¹ dx/√(x(1−x³))` with `x = sin²θ`.
fn b00_minus_integral(tol: f64) -> Result<f64> {
    quad(
        |t: f64| {
            let x = t.sin().powi(2);
            2.0 / (1.0 + x + x * x).sqrt()
        },
        0.0,
        FRAC_PI_2,
        tol,
    )
}

/// `∫_{−∞}^1 dx/√(1−x³)`, split at −1 and 0.
fn b00_plus_integral(tol: f64) -> Result<f64> {
    // [−1, 0], x = −s
    let a = quad(|s: f64| 1.0 / (1.0 + s * s * s).sqrt(), 0.0, 1.0, tol)?;
    // (−∞, −1], x = −1/τ²
    let b = quad(|t: f64| 2.0 / (1.0 + t.powi(6)).sqrt(), 0.0, 1.0, tol)?;
    // [0, 1], x = 1 − t²
    let c = quad(
        |t: f64| {
            let x = 1.0 - t * t;
            2.0 / (1.0 + x + x * x).sqrt()
        },
        0.0,
        1.0,
        tol,
    )?;
    Ok(a + b + c)
}

/// `∫_{−1}^1 x dx/√(1−x³)` with `x = 1 − t²`.
fn b10_first_integral(tol: f64) -> Result<f64> {
    quad(
        |t: f64| {
            let x = 1.0 - t * t;
            2.0 * x / (1.0 + x + x * x).sqrt()
        },
        0.0,
        SQRT_2,
        tol,
    )
}

/// `∫₀¹ x^{3/2} dx/(√(1+σx³) + 1 + σx³)` with `x = u²`; for `σ = −1` also `u = sin θ`.
fn b10_quotient_integral(sigma: f64, tol: f64) -> Result<f64> {
    if sigma > 0.0 {
        quad(
            |u: f64| {
                let w = 1.0 + u.powi(6);
                2.0 * u.powi(4) / (w.sqrt() + w)
            },
            0.0,
            1.0,
            tol,
        )
    } else {
        quad(
            |t: f64| {
                let (u, c) = t.sin_cos();
                let w = (1.0 - u.powi(6)).max(0.0);
                2.0 * u.powi(4) * c / (w.sqrt() + w)
            },
            0.0,
            FRAC_PI_2,
            tol,
        )
    }
}

pub fn constants(rel_tol: f64) -> Result<Constants> {
    let tol = rel_tol.min(1e-12);
    let b00_minus = 0.6 * b00_minus_integral(tol)?;
    let b00_plus = -0.6 * b00_plus_integral(tol)?;
    // ∫₁^{−1} = −∫_{−1}^1
    let b10_plus = 3.0 / 7.0 * (-b10_first_integral(tol)? - b10_quotient_integral(1.0, tol)? - 2.0);
    let b10_minus = -3.0 / 7.0 * (b10_quotient_integral(-1.0, tol)? - 2.0);
    let r0 = 72f64.powf(1.0 / 6.0);
    let r1 = 648f64.powf(1.0 / 6.0);
    Ok(Constants {
        b00_plus,
        b00_minus,
        b10_plus,
        b10_minus,
        b0_plus: r0 * b00_plus,
        b0_minus: r0 * b00_minus,
        b1_plus: r1 * b10_plus,
        b1_minus: r1 * b10_minus,
        rho1: -b00_plus / b00_minus,
        rho3: -b10_plus / b10_minus,
    })
}

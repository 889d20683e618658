//! Poincaré return map of the perturbed system on the section `{y = 0, x > 1}`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::frac::Frac;
use crate::algebra::Param;
use crate::error::{Error, Result};
use crate::melnikov::PerturbationSet;
use crate::oracle::{check_level, eval_num, oval_endpoints};
use crate::picard_fuchs::Side;

pub const LOCAL_TOL: f64 = 1e-12;
pub const MAX_STEPS: usize = 2_000_000;
pub const MAX_EPSILON: f64 = 0.01;

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct DisplacementSample {
    pub h: f64,
    pub epsilon: f64,
    pub displacement: f64,
}

// Dormand–Prince 5(4)
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One step of size `dt`; returns the new state and the embedded error estimate.
pub fn dopri_step<const N: usize>(f: &impl Fn(f64, &[f64; N]) -> [f64; N], t: f64, y: &[f64; N], dt: f64) -> ([f64; N], [f64; N]) {
    let mut k = [[0.0; N]; 7];
    for s in 0..7 {
        let mut arg = *y;
        for (j, kj) in k.iter().enumerate().take(s) {
            for i in 0..N {
                arg[i] += dt * A[s][j] * kj[i];
            }
        }
        k[s] = f(t + C[s] * dt, &arg);
    }
    let mut out = *y;
    let mut err = [0.0; N];
    for i in 0..N {
        for s in 0..7 {
            out[i] += dt * A[6].get(s).copied().unwrap_or(0.0) * k[s][i];
            err[i] += dt * E[s] * k[s][i];
        }
    }
    (out, err)
}

fn error_norm<const N: usize>(y: &[f64; N], z: &[f64; N], err: &[f64; N], tol: f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..N {
        let scale = tol + tol * y[i].abs().max(z[i].abs());
        acc += (err[i] / scale).powi(2);
    }
    (acc / N as f64).sqrt()
}

/// Numeric right-hand side with the accumulated energy change per unit ε.
struct Field {
    p: [Vec<((u32, u32), f64)>; 3],
    q: [Vec<((u32, u32), f64)>; 3],
    eps: f64,
}

impl Field {
    fn new(system: &PerturbationSet, eps: f64) -> Result<Field> {
        let none = BTreeMap::new();
        let numeric = |k: usize, p: bool| {
            let poly = if p { &system.p[k] } else { &system.q[k] };
            poly.to_numeric(&none)
        };
        Ok(Field {
            p: [numeric(0, true)?, numeric(1, true)?, numeric(2, true)?],
            q: [numeric(0, false)?, numeric(1, false)?, numeric(2, false)?],
            eps,
        })
    }

    /// `(Σ εᵏ⁻¹Pₖ, Σ εᵏ⁻¹Qₖ)`.
    fn perturbation(&self, x: f64, y: f64) -> (f64, f64) {
        let mut p = 0.0;
        let mut q = 0.0;
        let mut w = 1.0;
        for k in 0..3 {
            p += w * eval_num(&self.p[k], x, y);
            q += w * eval_num(&self.q[k], x, y);
            w *= self.eps;
        }
        (p, q)
    }

    /// `(ẋ, ẏ, σ̇)` with `Ḣ = ε σ̇`.
    fn rhs(&self, s: &[f64; 3]) -> [f64; 3] {
        let [x, y, _] = *s;
        let (p, q) = self.perturbation(x, y);
        let hx = x * x * (x - 1.0);
        [y + self.eps * p, -hx + self.eps * q, hx * p + y * q]
    }
}

/// End of one revolution: the section point, the energy change per unit ε,
/// and the number of accepted steps.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Revolution {
    pub x_end: f64,
    pub sigma: f64,
    pub steps: usize,
}

/// Integrates from `(x, 0)` with `x` the right end of the oval `H = h` until
/// the orbit crosses the section again from above.
pub fn revolve(system: &PerturbationSet, epsilon: f64, h: f64, side: Side) -> Result<Revolution> {
    check_level(h, side)?;
    if !(epsilon.abs() <= MAX_EPSILON) {
        return Err(Error::Config(format!("|epsilon| must not exceed {MAX_EPSILON}, got {epsilon}")));
    }
    let field = Field::new(system, epsilon)?;
    let f = |_: f64, s: &[f64; 3]| field.rhs(s);
    let (_, x0) = oval_endpoints(h, side)?;
    let mut state = [x0, 0.0, 0.0];
    let mut t = 0.0;
    let mut dt = 1e-3;
    let mut below = false;
    let mut steps = 0;
    while steps < MAX_STEPS {
        let (next, err) = dopri_step(&f, t, &state, dt);
        let norm = error_norm(&state, &next, &err, LOCAL_TOL);
        if norm > 1.0 {
            dt *= (0.9 * norm.powf(-0.2)).max(0.2);
            continue;
        }
        steps += 1;
        t += dt;
        dt *= (0.9 * norm.max(1e-10).powf(-0.2)).min(5.0);
        if next[1] < 0.0 {
            below = true;
        }
        if below && state[1] > 0.0 && next[1] <= 0.0 && next[0] > 1.0 {
            let [x_end, sigma] = henon_to_section(&field, &state);
            return Ok(Revolution { x_end, sigma, steps });
        }
        state = next;
    }
    Err(Error::NoReturn { steps })
}

/// Hénon's trick: with `y` as independent variable, integrate `(x, σ)` from
/// the last state above the section down to `y = 0`.
fn henon_to_section(field: &Field, state: &[f64; 3]) -> [f64; 2] {
    let g = |y: f64, s: &[f64; 2]| {
        let [dx, dy, ds] = field.rhs(&[s[0], y, 0.0]);
        [dx / dy, ds / dy]
    };
    let mut z = [state[0], state[2]];
    let mut y = state[1];
    let substeps = 4;
    let dy = -y / substeps as f64;
    for _ in 0..substeps {
        z = dopri_step(&g, y, &z, dy).0;
        y += dy;
    }
    z
}

/// `H(end) − H(start)` after one revolution of the perturbed system.
pub fn displacement_for(system: &PerturbationSet, epsilon: f64, h: f64, side: Side) -> Result<DisplacementSample> {
    let r = revolve(system, epsilon, h, side)?;
    Ok(DisplacementSample { h, epsilon, displacement: epsilon * r.sigma })
}

/// The general cubic perturbation with the given coefficients; unlisted
/// coefficients are zero.
pub fn general_system(params: &BTreeMap<Param, Frac>) -> PerturbationSet {
    let full: BTreeMap<Param, Frac> = Param::all().map(|p| (p, params.get(&p).cloned().unwrap_or_else(Frac::zero))).collect();
    PerturbationSet::general().assign(&full)
}

pub fn displacement(params: &BTreeMap<Param, Frac>, epsilon: f64, h: f64, side: Side) -> Result<DisplacementSample> {
    displacement_for(&general_system(params), epsilon, h, side)
}

/// Displacements at `n` evenly spaced levels from `h_min` to `h_max`, which
/// must lie on the same side.
pub fn scan(system: &PerturbationSet, epsilon: f64, h_min: f64, h_max: f64, n: usize) -> Result<Vec<DisplacementSample>> {
    let side = if h_min > 0.0 && h_max > 0.0 {
        Side::Plus
    } else if h_min < 0.0 && h_max < 0.0 {
        Side::Minus
    } else {
        return Err(Error::Config("scan range must not contain h = 0".into()));
    };
    let n = n.max(1);
    (0..n)
        .map(|k| {
            let h = if n == 1 { h_min } else { h_min + (h_max - h_min) * k as f64 / (n - 1) as f64 };
            displacement_for(system, epsilon, h, side)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dopri_solves_exponential_growth() {
        let f = |_: f64, y: &[f64; 1]| [y[0]];
        let mut y = [1.0];
        let dt = 0.01;
        for k in 0..100 {
            y = dopri_step(&f, k as f64 * dt, &y, dt).0;
        }
        assert!((y[0] - 1f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn unperturbed_flow_returns_to_its_level() {
        let zero = PerturbationSet::zero();
        for (h, side) in [(0.01, Side::Plus), (-0.01, Side::Minus)] {
            let r = revolve(&zero, 0.0, h, side).unwrap();
            let (_, x0) = oval_endpoints(h, side).unwrap();
            assert!(r.sigma == 0.0);
            let energy = |x: f64| -x.powi(3) / 3.0 + x.powi(4) / 4.0;
            assert!((energy(r.x_end) - energy(x0)).abs() <= 1e-10);
        }
    }

    #[test]
    fn epsilon_is_bounded() {
        let zero = PerturbationSet::zero();
        assert!(matches!(revolve(&zero, 0.5, 0.01, Side::Plus), Err(Error::Config(_))));
        assert!(matches!(scan(&zero, 0.0, -0.01, 0.01, 3), Err(Error::Config(_))));
    }
}

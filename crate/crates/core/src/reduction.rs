//! Reduction of Abelian integrals `I_{i,j}(h) = ∮ x^i y^j dx` to the basis
//! `I_{0,1}, I_{1,1}, I_{2,1}` with coefficients polynomial in h.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_traits::Zero;

use crate::algebra::frac::{frac, Frac};
use crate::algebra::{HPoly, OneForm, ParamPoly};

/// `p1(h)·I_{0,1} + p2(h)·I_{1,1} + p3(h)·I_{2,1}`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct ReducedIntegral {
    pub p1: HPoly,
    pub p2: HPoly,
    pub p3: HPoly,
}

impl ReducedIntegral {
    pub fn zero() -> ReducedIntegral {
        ReducedIntegral::default()
    }

    pub fn new(p1: HPoly, p2: HPoly, p3: HPoly) -> ReducedIntegral {
        ReducedIntegral { p1, p2, p3 }
    }

    /// The basis integral `I_{k,1}`, `k ∈ {0, 1, 2}`.
    pub fn basis(k: usize) -> ReducedIntegral {
        let one = HPoly::constant(ParamPoly::one());
        let mut r = ReducedIntegral::zero();
        *r.component_mut(k) = one;
        r
    }

    pub fn components(&self) -> [&HPoly; 3] {
        [&self.p1, &self.p2, &self.p3]
    }

    fn component_mut(&mut self, k: usize) -> &mut HPoly {
        match k {
            0 => &mut self.p1,
            1 => &mut self.p2,
            _ => &mut self.p3,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &ReducedIntegral) -> ReducedIntegral {
        ReducedIntegral::new(self.p1.add(&other.p1), self.p2.add(&other.p2), self.p3.add(&other.p3))
    }

    pub fn sub(&self, other: &ReducedIntegral) -> ReducedIntegral {
        ReducedIntegral::new(self.p1.sub(&other.p1), self.p2.sub(&other.p2), self.p3.sub(&other.p3))
    }

    pub fn scale(&self, c: &Frac) -> ReducedIntegral {
        self.map(|p| p.scale(c))
    }

    pub fn mul_param(&self, c: &ParamPoly) -> ReducedIntegral {
        self.map(|p| p.mul_param(c))
    }

    /// `h^k` times the integral.
    pub fn shift(&self, k: usize) -> ReducedIntegral {
        self.map(|p| p.shift(k))
    }

    pub fn map(&self, f: impl Fn(&HPoly) -> HPoly) -> ReducedIntegral {
        ReducedIntegral::new(f(&self.p1), f(&self.p2), f(&self.p3))
    }

    /// Applies `f` to every parameter-polynomial coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> ReducedIntegral {
        self.map(|p| p.map_coeffs(&f))
    }

    /// Numeric value given the three basis values at `h`.
    pub fn eval_f64(
        &self,
        h: f64,
        basis: [f64; 3],
        params: &std::collections::BTreeMap<crate::algebra::Param, f64>,
    ) -> crate::error::Result<f64> {
        let mut acc = 0.0;
        for (p, b) in self.components().iter().zip(basis) {
            acc += p.eval_f64(h, params)? * b;
        }
        Ok(acc)
    }
}

impl fmt::Display for ReducedIntegral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·I01 + ({})·I11 + ({})·I21", self.p1, self.p2, self.p3)
    }
}

/// Rational-coefficient triple used by the memo table.
type Triple = [Vec<Frac>; 3];

fn triple_add_scaled(acc: &mut Triple, t: &Triple, c: &Frac, shift: usize) {
    for k in 0..3 {
        let needed = t[k].len() + shift;
        if acc[k].len() < needed {
            acc[k].resize(needed, Frac::zero());
        }
        for (e, v) in t[k].iter().enumerate() {
            acc[k][e + shift] += v * c;
        }
    }
}

fn triple_to_reduced(t: &Triple) -> ReducedIntegral {
    ReducedIntegral::new(HPoly::from_fracs(&t[0]), HPoly::from_fracs(&t[1]), HPoly::from_fracs(&t[2]))
}

fn memo() -> &'static RwLock<HashMap<(u32, u32), Triple>> {
    static MEMO: OnceLock<RwLock<HashMap<(u32, u32), Triple>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn reduce_triple(i: u32, j: u32) -> Triple {
    if let Some(t) = memo().read().unwrap().get(&(i, j)) {
        return t.clone();
    }
    // the lock is not held while recursing
    let t = compute_triple(i, j);
    memo().write().unwrap().insert((i, j), t.clone());
    t
}

fn compute_triple(i: u32, j: u32) -> Triple {
    let mut t: Triple = [Vec::new(), Vec::new(), Vec::new()];
    if j % 2 == 0 {
        return t;
    }
    if j >= 3 {
        // (i+1) I_{i,j} = j (I_{i+4,j-2} − I_{i+3,j-2})
        let c = frac(j.into(), i64::from(i) + 1);
        triple_add_scaled(&mut t, &reduce_triple(i + 4, j - 2), &c, 0);
        triple_add_scaled(&mut t, &reduce_triple(i + 3, j - 2), &-c, 0);
        return t;
    }
    match i {
        0..=2 => t[i as usize] = vec![Frac::from_integer(1.into())],
        3 => t[2] = vec![Frac::from_integer(1.into())],
        _ => {
            // I_{i,1} = (4i+6)/(3i+9) I_{i-1,1} + (4i-12)/(i+3) h I_{i-4,1}
            for k in 4..i {
                reduce_triple(k, 1);
            }
            let ii = i64::from(i);
            triple_add_scaled(&mut t, &reduce_triple(i - 1, 1), &frac(4 * ii + 6, 3 * ii + 9), 0);
            triple_add_scaled(&mut t, &reduce_triple(i - 4, 1), &frac(4 * ii - 12, ii + 3), 1);
        }
    }
    t
}

/// Expresses `I_{i,j}` in the basis; the zero triple for even `j`.
pub fn reduce_monomial(i: u32, j: u32) -> ReducedIntegral {
    triple_to_reduced(&reduce_triple(i, j))
}

/// Reduces `∮ Q dx − P dy` using `∮ −P dy = ∮ (∫₀^y ∂P/∂x dy) dx`.
pub fn reduce_form(omega: &OneForm) -> ReducedIntegral {
    let integrand = &omega.q_part + &omega.p_part.d_dx().integrate_dy();
    let mut comps: [Vec<ParamPoly>; 3] = Default::default();
    for (&(i, j), c) in integrand.terms() {
        if j % 2 == 0 {
            continue;
        }
        let t = reduce_triple(i, j);
        for k in 0..3 {
            if comps[k].len() < t[k].len() {
                comps[k].resize(t[k].len(), ParamPoly::zero());
            }
            for (e, v) in t[k].iter().enumerate() {
                if !v.is_zero() {
                    comps[k][e] = &comps[k][e] + &c.scale(v);
                }
            }
        }
    }
    let [a, b, c] = comps;
    ReducedIntegral::new(HPoly::new(a), HPoly::new(b), HPoly::new(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac::fint;
    use crate::algebra::{plane_poly_d, PlanePoly};

    fn triple(p1: &[Frac], p2: &[Frac], p3: &[Frac]) -> ReducedIntegral {
        ReducedIntegral::new(HPoly::from_fracs(p1), HPoly::from_fracs(p2), HPoly::from_fracs(p3))
    }

    fn z() -> Frac {
        fint(0)
    }

    #[test]
    fn low_order_reductions() {
        assert_eq!(reduce_monomial(3, 1), triple(&[], &[], &[fint(1)]));
        assert_eq!(reduce_monomial(4, 1), triple(&[z(), frac(4, 7)], &[], &[frac(22, 21)]));
        // 13/21, not 13/12: I_{5,1} = h I_{1,1} + (13/12) I_{4,1}
        assert_eq!(reduce_monomial(5, 1), triple(&[z(), frac(13, 21)], &[z(), fint(1)], &[frac(143, 126)]));
        assert_eq!(
            reduce_monomial(6, 1),
            triple(&[z(), frac(130, 189)], &[z(), frac(10, 9)], &[frac(715, 567), frac(4, 3)])
        );
        assert_eq!(reduce_monomial(0, 3), triple(&[z(), frac(12, 7)], &[], &[frac(1, 7)]));
        assert_eq!(
            reduce_monomial(1, 3),
            triple(&[z(), frac(1, 14)], &[z(), frac(3, 2)], &[frac(11, 84)])
        );
        assert_eq!(
            reduce_monomial(2, 3),
            triple(&[z(), frac(13, 189)], &[z(), frac(1, 9)], &[frac(143, 1134), frac(4, 3)])
        );
        assert_eq!(
            reduce_monomial(4, 3),
            triple(&[z(), frac(442, 6237), frac(48, 77)], &[z(), frac(34, 297)], &[frac(221, 1701), frac(988, 693)])
        );
        assert!(reduce_monomial(5, 2).is_zero());
    }

    #[test]
    fn higher_powers_of_y() {
        // checked against direct quadrature of the oval integrals
        assert_eq!(reduce_monomial(3, 3), reduce_monomial(2, 3));
        assert_eq!(
            reduce_monomial(0, 5),
            triple(&[z(), frac(65, 6237), frac(240, 77)], &[z(), frac(5, 297)], &[frac(65, 3402), frac(320, 693)])
        );
    }

    #[test]
    fn downward_recurrence_holds() {
        for i in 4..=12u32 {
            let ii = i64::from(i);
            let lhs = reduce_monomial(i, 1).scale(&fint(ii + 3));
            let rhs = reduce_monomial(i - 1, 1)
                .scale(&frac(4 * ii + 6, 3))
                .add(&reduce_monomial(i - 4, 1).shift(1).scale(&fint(4 * ii - 12)));
            assert!(lhs.sub(&rhs).is_zero(), "i = {i}");
        }
    }

    #[test]
    fn forms_reduce_to_expected_integrals() {
        // y dx
        let omega = OneForm::new(PlanePoly::y(), PlanePoly::zero());
        assert_eq!(reduce_form(&omega), ReducedIntegral::basis(0));
        // d(x^2 y^3 + x) is exact
        let mut r = PlanePoly::zero();
        r.add_term(2, 3, ParamPoly::one());
        r.add_term(1, 0, ParamPoly::one());
        assert!(reduce_form(&plane_poly_d(&r)).is_zero());
    }
}

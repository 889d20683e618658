//! Polynomials in (x, y) with parameter-polynomial coefficients, and one-forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::frac::{fint, frac, Frac};
use super::param::{Param, ParamPoly};
use crate::error::Result;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct PlanePoly {
    terms: BTreeMap<(u32, u32), ParamPoly>,
}

impl PlanePoly {
    pub fn zero() -> PlanePoly {
        PlanePoly::default()
    }

    pub fn monomial(i: u32, j: u32, c: ParamPoly) -> PlanePoly {
        let mut p = PlanePoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn constant(c: ParamPoly) -> PlanePoly {
        PlanePoly::monomial(0, 0, c)
    }

    pub fn x() -> PlanePoly {
        PlanePoly::monomial(1, 0, ParamPoly::one())
    }

    pub fn y() -> PlanePoly {
        PlanePoly::monomial(0, 1, ParamPoly::one())
    }

    /// `H = y²/2 − x³/3 + x⁴/4`.
    pub fn hamiltonian() -> PlanePoly {
        let mut h = PlanePoly::zero();
        h.add_term(0, 2, frac(1, 2).into());
        h.add_term(3, 0, frac(-1, 3).into());
        h.add_term(4, 0, frac(1, 4).into());
        h
    }

    /// `Σ_{1≤i+j≤3} coeff(i, j) x^i y^j`.
    pub fn cubic(coeff: impl Fn(u32, u32) -> ParamPoly) -> PlanePoly {
        let mut p = PlanePoly::zero();
        for &(i, j) in super::param::SLOTS.iter() {
            p.add_term(i, j, coeff(i, j));
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, j)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> ParamPoly {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &ParamPoly)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Frac) -> PlanePoly {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn mul_param(&self, c: &ParamPoly) -> PlanePoly {
        self.map_coeffs(|p| p * c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> PlanePoly {
        let mut out = PlanePoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, f(c));
        }
        out
    }

    pub fn d_dx(&self) -> PlanePoly {
        let mut out = PlanePoly::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c.scale(&fint(i.into())));
            }
        }
        out
    }

    pub fn d_dy(&self) -> PlanePoly {
        let mut out = PlanePoly::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c.scale(&fint(j.into())));
            }
        }
        out
    }

    /// `∫₀^y f(x, s) ds`.
    pub fn integrate_dy(&self) -> PlanePoly {
        let mut out = PlanePoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j + 1, c.scale(&frac(1, i64::from(j) + 1)));
        }
        out
    }

    pub fn eval_f64(&self, x: f64, y: f64, params: &BTreeMap<Param, f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (&(i, j), c) in &self.terms {
            acc += c.eval_f64(params)? * x.powi(i as i32) * y.powi(j as i32);
        }
        Ok(acc)
    }

    /// Partially evaluates the parameter coefficients.
    pub fn eval_params(&self, values: &BTreeMap<Param, Frac>) -> PlanePoly {
        self.map_coeffs(|c| c.eval_partial(values))
    }

    pub fn compose_params(&self, subs: &BTreeMap<Param, ParamPoly>) -> PlanePoly {
        self.map_coeffs(|c| c.compose(subs))
    }

    /// Numeric coefficients once all parameters are fixed.
    pub fn to_numeric(&self, params: &BTreeMap<Param, f64>) -> Result<Vec<((u32, u32), f64)>> {
        self.terms.iter().map(|(&k, c)| Ok((k, c.eval_f64(params)?))).collect()
    }
}

impl<'a> Add<&'a PlanePoly> for &PlanePoly {
    type Output = PlanePoly;
    fn add(self, rhs: &'a PlanePoly) -> PlanePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a PlanePoly> for &PlanePoly {
    type Output = PlanePoly;
    fn sub(self, rhs: &'a PlanePoly) -> PlanePoly {
        self + &(-rhs)
    }
}

impl Neg for &PlanePoly {
    type Output = PlanePoly;
    fn neg(self) -> PlanePoly {
        self.map_coeffs(|c| -c)
    }
}

impl<'a> Mul<&'a PlanePoly> for &PlanePoly {
    type Output = PlanePoly;
    fn mul(self, rhs: &'a PlanePoly) -> PlanePoly {
        let mut out = PlanePoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl fmt::Display for PlanePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (&(i, j), c) in self.terms.iter().rev() {
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let xs = match i {
                        0 => String::new(),
                        1 => "x".to_string(),
                        _ => format!("x^{i}"),
                    };
                    let ys = match j {
                        0 => String::new(),
                        1 => "y".to_string(),
                        _ => format!("y^{j}"),
                    };
                    format!("{xs}{}{ys}", if i > 0 && j > 0 { "*" } else { "" })
                }
            };
            parts.push(if mono.is_empty() { format!("({c})") } else { format!("({c})*{mono}") });
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for PlanePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanePoly({self})")
    }
}

/// `ω = Q dx − P dy`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct OneForm {
    pub q_part: PlanePoly,
    pub p_part: PlanePoly,
}

impl OneForm {
    pub fn new(q_part: PlanePoly, p_part: PlanePoly) -> OneForm {
        OneForm { q_part, p_part }
    }

    pub fn zero() -> OneForm {
        OneForm::default()
    }

    /// Coefficient of dx.
    pub fn dx_coeff(&self) -> PlanePoly {
        self.q_part.clone()
    }

    /// Coefficient of dy.
    pub fn dy_coeff(&self) -> PlanePoly {
        -&self.p_part
    }

    pub fn is_zero(&self) -> bool {
        self.q_part.is_zero() && self.p_part.is_zero()
    }

    pub fn degree(&self) -> u32 {
        self.q_part.degree().max(self.p_part.degree())
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm::new(&self.q_part + &other.q_part, &self.p_part + &other.p_part)
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm::new(&self.q_part - &other.q_part, &self.p_part - &other.p_part)
    }

    /// `f · ω`.
    pub fn mul_poly(&self, f: &PlanePoly) -> OneForm {
        OneForm::new(f * &self.q_part, f * &self.p_part)
    }

    /// `d(dx-coeff)/dy = d(dy-coeff)/dx`.
    pub fn is_closed(&self) -> bool {
        self.dx_coeff().d_dy() == self.dy_coeff().d_dx()
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> OneForm {
        OneForm::new(self.q_part.map_coeffs(&f), self.p_part.map_coeffs(&f))
    }
}

/// Total differential `f_x dx + f_y dy`.
pub fn plane_poly_d(f: &PlanePoly) -> OneForm {
    OneForm::new(f.d_dx(), -&f.d_dy())
}

impl Zero for PlanePoly {
    fn zero() -> Self {
        PlanePoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add for PlanePoly {
    type Output = PlanePoly;
    fn add(self, rhs: PlanePoly) -> PlanePoly {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::param::poly;
    use proptest::prelude::*;

    fn num(c: i64) -> ParamPoly {
        ParamPoly::constant(fint(c))
    }

    #[test]
    fn differential_of_hamiltonian() {
        let d = plane_poly_d(&PlanePoly::hamiltonian());
        let mut dx = PlanePoly::zero();
        dx.add_term(2, 0, num(-1));
        dx.add_term(3, 0, num(1));
        assert_eq!(d.dx_coeff(), dx);
        assert_eq!(d.dy_coeff(), PlanePoly::y());
    }

    #[test]
    fn differential_of_constant_and_product() {
        assert!(plane_poly_d(&PlanePoly::constant(poly("p_101 + 3"))).is_zero());
        let xy = &PlanePoly::x() * &PlanePoly::y();
        let d = plane_poly_d(&xy);
        assert_eq!(d.dx_coeff(), PlanePoly::y());
        assert_eq!(d.dy_coeff(), PlanePoly::x());
    }

    #[test]
    fn antiderivative_in_y() {
        let mut f = PlanePoly::zero();
        f.add_term(2, 2, poly("3*q_021"));
        f.add_term(1, 0, num(5));
        assert_eq!(f.integrate_dy().d_dy(), f);
    }

    fn arb_plane() -> impl Strategy<Value = PlanePoly> {
        prop::collection::vec((0u32..6, 0u32..6, -9i64..10, 0usize..54), 0..10).prop_map(|terms| {
            let mut p = PlanePoly::zero();
            for (i, j, c, v) in terms {
                let coeff = &num(c) + &ParamPoly::var(Param::from_index(v).unwrap());
                p.add_term(i, j, coeff);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn exact_forms_are_closed(f in arb_plane()) {
            prop_assert!(plane_poly_d(&f).is_closed());
        }
    }
}

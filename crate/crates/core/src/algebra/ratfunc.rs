//! Quotients of parameter polynomials, as produced by solving vanishing
//! conditions with a parameter-dependent pivot.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::param::{Param, ParamPoly};

#[derive(Clone, Debug)]
pub struct RationalExpr {
    pub num: ParamPoly,
    pub den: ParamPoly,
}

impl RationalExpr {
    pub fn poly(p: ParamPoly) -> RationalExpr {
        RationalExpr { num: p, den: ParamPoly::one() }
    }

    /// Builds `num / den`, cancelling `den` when it divides `num` and making
    /// the leading coefficient of `den` one.
    pub fn new(num: ParamPoly, den: ParamPoly) -> RationalExpr {
        assert!(!den.is_zero(), "zero denominator");
        if let Some(q) = num.div_exact(&den) {
            return RationalExpr::poly(q);
        }
        let lc = den.leading_term().map(|(_, c)| c.clone()).unwrap();
        let inv = lc.recip();
        RationalExpr { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn as_poly(&self) -> Option<ParamPoly> {
        self.num.div_exact(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RationalExpr) -> RationalExpr {
        if self.den == other.den {
            return RationalExpr::new(&self.num + &other.num, self.den.clone());
        }
        RationalExpr::new(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den)
    }

    pub fn mul(&self, other: &RationalExpr) -> RationalExpr {
        RationalExpr::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn neg(&self) -> RationalExpr {
        RationalExpr { num: -&self.num, den: self.den.clone() }
    }

    /// Substitutes rational expressions for parameters of `p`.
    pub fn substitute(p: &ParamPoly, subs: &BTreeMap<Param, RationalExpr>) -> RationalExpr {
        let mut acc = RationalExpr::poly(ParamPoly::zero());
        for (m, c) in p.terms() {
            let mut term = RationalExpr::poly(ParamPoly::constant(c.clone()));
            for (param, e) in m.factors() {
                let factor = match subs.get(&param) {
                    Some(r) => r.clone(),
                    None => RationalExpr::poly(ParamPoly::var(param)),
                };
                for _ in 0..e {
                    term = term.mul(&factor);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl From<ParamPoly> for RationalExpr {
    fn from(p: ParamPoly) -> Self {
        RationalExpr::poly(p)
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den.as_constant() {
            Some(c) if c.is_one() => write!(f, "{}", self.num),
            _ => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::param::poly;

    #[test]
    fn cancellation_and_equality() {
        let r = RationalExpr::new(poly("2*p_101*q_011 + 2*q_011"), poly("p_101 + 1"));
        assert_eq!(r.as_poly(), Some(poly("2*q_011")));
        let s = RationalExpr::new(poly("q_031"), poly("90*p_211 + 90*q_121"));
        assert_eq!(s.den, poly("p_211 + q_121"));
        assert_eq!(s, RationalExpr::new(poly("2*q_031"), poly("180*q_121 + 180*p_211")));
    }

    #[test]
    fn substitution_clears_denominators() {
        // p_021 (p_211 + q_121) with p_021 = q_031 / (p_211 + q_121)
        let mut subs = BTreeMap::new();
        subs.insert("p_021".parse().unwrap(), RationalExpr::new(poly("q_031"), poly("p_211 + q_121")));
        let r = RationalExpr::substitute(&poly("p_021*p_211 + p_021*q_121 + 1"), &subs);
        assert_eq!(r.as_poly(), Some(poly("q_031 + 1")));
    }
}

//! Polynomials in the energy level h.

use std::fmt;

use super::frac::{frac_string, to_f64, Frac};
use super::param::{Param, ParamPoly};
use crate::error::Result;

/// `Σ_k coeffs[k] h^k`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HPoly {
    coeffs: Vec<ParamPoly>,
}

impl HPoly {
    pub fn zero() -> HPoly {
        HPoly::default()
    }

    pub fn constant(c: ParamPoly) -> HPoly {
        HPoly::new(vec![c])
    }

    /// `c h^k`.
    pub fn monomial(k: usize, c: ParamPoly) -> HPoly {
        let mut coeffs = vec![ParamPoly::zero(); k + 1];
        coeffs[k] = c;
        HPoly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<ParamPoly>) -> HPoly {
        while coeffs.last().is_some_and(ParamPoly::is_zero) {
            coeffs.pop();
        }
        HPoly { coeffs }
    }

    pub fn from_fracs(coeffs: &[Frac]) -> HPoly {
        HPoly::new(coeffs.iter().cloned().map(ParamPoly::constant).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ParamPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, other: &HPoly) -> HPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        HPoly::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &HPoly) -> HPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HPoly {
        HPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Frac) -> HPoly {
        HPoly::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_param(&self, c: &ParamPoly) -> HPoly {
        HPoly::new(self.coeffs.iter().map(|p| p * c).collect())
    }

    /// `h^k · self`.
    pub fn shift(&self, k: usize) -> HPoly {
        if self.is_zero() {
            return HPoly::zero();
        }
        let mut coeffs = vec![ParamPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        HPoly::new(coeffs)
    }

    pub fn mul(&self, other: &HPoly) -> HPoly {
        if self.is_zero() || other.is_zero() {
            return HPoly::zero();
        }
        let mut coeffs = vec![ParamPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        HPoly::new(coeffs)
    }

    /// Exact evaluation at a rational level.
    pub fn eval(&self, h: &Frac) -> ParamPoly {
        self.coeffs.iter().rev().fold(ParamPoly::zero(), |acc, c| &acc.scale(h) + c)
    }

    pub fn eval_f64(&self, h: f64, params: &std::collections::BTreeMap<Param, f64>) -> Result<f64> {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * h + c.eval_f64(params)?;
        }
        Ok(acc)
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> HPoly {
        HPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl fmt::Display for HPoly {
    /// Ascending powers, e.g. `221/1701 + 988/693 h`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = match c.as_constant() {
                Some(q) => frac_string(&q),
                None if c.len() == 1 => c.to_string(),
                None => format!("({c})"),
            };
            let power = if k == 1 { "h".to_string() } else { format!("h^{k}") };
            parts.push(match (k, coeff.as_str()) {
                (0, _) => coeff,
                (_, "1") => power,
                (_, "-1") => format!("-{power}"),
                _ => format!("{coeff} {power}"),
            });
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPoly({self})")
    }
}

/// Numeric evaluation of a rational coefficient polynomial.
pub fn eval_rational_f64(coeffs: &[Frac], h: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * h + to_f64(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac::frac;

    #[test]
    fn exact_evaluation_and_display() {
        let p = HPoly::from_fracs(&[frac(221, 1701), frac(988, 693)]);
        assert_eq!(p.eval(&frac(1, 2)).as_constant().unwrap(), frac(221, 1701) + frac(494, 693));
        assert_eq!(p.to_string(), "221/1701 + 988/693 h");
        assert_eq!(HPoly::from_fracs(&[frac(0, 1), frac(12, 7)]).to_string(), "12/7 h");
        assert_eq!(HPoly::from_fracs(&[frac(-110, 1701), frac(4940, 693)]).to_string(), "-110/1701 + 4940/693 h");
    }

    #[test]
    fn shift_and_product() {
        let p = HPoly::from_fracs(&[frac(1, 1), frac(12, 1)]);
        assert_eq!(p.shift(1), HPoly::from_fracs(&[frac(0, 1), frac(1, 1), frac(12, 1)]));
        assert_eq!(p.mul(&p), HPoly::from_fracs(&[frac(1, 1), frac(24, 1), frac(144, 1)]));
        assert!(HPoly::from_fracs(&[frac(0, 1)]).is_zero());
    }
}

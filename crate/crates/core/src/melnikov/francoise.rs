//! Decomposition `ω = r·dH + dR` of relatively exact one-forms.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::frac::{fint, Frac};
use crate::algebra::linalg::rref_solve;
use crate::algebra::{plane_poly_d, OneForm, ParamPoly, PlanePoly};
use crate::error::{Error, Result};
use crate::reduction::reduce_form;

/// How far past the initial guess the degree of `r` is raised.
const EXTRA_DEGREE: u32 = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct FrancoiseStep {
    pub r: PlanePoly,
    pub big_r: PlanePoly,
}

impl FrancoiseStep {
    /// `ω − r·dH − dR`; identically zero for a valid step.
    pub fn residual(&self, omega: &OneForm) -> OneForm {
        let dh = plane_poly_d(&PlanePoly::hamiltonian());
        omega.sub(&dh.mul_poly(&self.r)).sub(&plane_poly_d(&self.big_r))
    }
}

/// Monomials of total degree `lo..=hi`, degree by degree, higher x-power first.
fn monomials(lo: u32, hi: u32) -> Vec<(u32, u32)> {
    (lo..=hi).flat_map(|d| (0..=d).rev().map(move |i| (i, d - i))).collect()
}

#[derive(Copy, Clone)]
enum Unknown {
    BigR(u32, u32),
    R(u32, u32),
}

/// Finds `r`, `R` with `ω = r·dH + dR`.
///
/// Unknown coefficients are ordered with those of `R` first and those of `r`
/// by decreasing degree; free unknowns are set to zero, which fixes the
/// freedom `(r, R) → (r + g(H), R − G(H))`.
pub fn francoise_decompose(omega: &OneForm) -> Result<FrancoiseStep> {
    if !reduce_form(omega).is_zero() {
        return Err(Error::NotRelativelyExact);
    }
    if omega.is_zero() {
        return Ok(FrancoiseStep { r: PlanePoly::zero(), big_r: PlanePoly::zero() });
    }
    let deg = omega.degree();
    let start = deg.saturating_sub(2);
    for deg_r in start..=start + EXTRA_DEGREE {
        let deg_big_r = (deg + 1).max(deg_r + 4);
        if let Some(step) = try_degrees(omega, deg_r, deg_big_r) {
            return Ok(step);
        }
    }
    Err(Error::DecompositionFailed { max_degree: start + EXTRA_DEGREE })
}

fn try_degrees(omega: &OneForm, deg_r: u32, deg_big_r: u32) -> Option<FrancoiseStep> {
    let mut unknowns: Vec<Unknown> = monomials(1, deg_big_r).into_iter().map(|(i, j)| Unknown::BigR(i, j)).collect();
    unknowns.extend(monomials(0, deg_r).into_iter().rev().map(|(i, j)| Unknown::R(i, j)));

    // rows: (0, i, j) for the dx coefficient, (1, i, j) for dy
    let mut rows: BTreeMap<(u8, u32, u32), usize> = BTreeMap::new();
    let mut entries: Vec<Vec<(usize, Frac)>> = Vec::with_capacity(unknowns.len());
    fn row_of(key: (u8, u32, u32), rows: &mut BTreeMap<(u8, u32, u32), usize>) -> usize {
        let n = rows.len();
        *rows.entry(key).or_insert(n)
    }
    for u in &unknowns {
        let mut col = Vec::new();
        match *u {
            Unknown::BigR(i, j) => {
                if i > 0 {
                    col.push((row_of((0, i - 1, j), &mut rows), fint(i.into())));
                }
                if j > 0 {
                    col.push((row_of((1, i, j - 1), &mut rows), fint(j.into())));
                }
            }
            Unknown::R(i, j) => {
                // dH = (x³ − x²) dx + y dy
                col.push((row_of((0, i + 3, j), &mut rows), fint(1)));
                col.push((row_of((0, i + 2, j), &mut rows), fint(-1)));
                col.push((row_of((1, i, j + 1), &mut rows), fint(1)));
            }
        }
        entries.push(col);
    }
    let mut rhs_terms: Vec<((u8, u32, u32), ParamPoly)> = Vec::new();
    for (&(i, j), c) in omega.dx_coeff().terms() {
        rhs_terms.push(((0, i, j), c.clone()));
    }
    for (&(i, j), c) in omega.dy_coeff().terms() {
        rhs_terms.push(((1, i, j), c.clone()));
    }
    for (key, _) in &rhs_terms {
        row_of(*key, &mut rows);
    }
    let n_rows = rows.len();
    let mut matrix = vec![vec![Frac::zero(); unknowns.len()]; n_rows];
    for (c, col) in entries.iter().enumerate() {
        for (r, v) in col {
            matrix[*r][c] += v;
        }
    }
    let mut rhs = vec![ParamPoly::zero(); n_rows];
    for (key, c) in rhs_terms {
        let r = rows[&key];
        rhs[r] = &rhs[r] + &c;
    }
    let solution = rref_solve(&matrix, &rhs).ok()?;
    let mut r = PlanePoly::zero();
    let mut big_r = PlanePoly::zero();
    for (u, v) in unknowns.iter().zip(solution) {
        match *u {
            Unknown::BigR(i, j) => big_r.add_term(i, j, v),
            Unknown::R(i, j) => r.add_term(i, j, v),
        }
    }
    Some(FrancoiseStep { r, big_r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly;

    #[test]
    fn exact_forms_have_zero_multiplier() {
        let mut f = PlanePoly::zero();
        f.add_term(2, 1, poly("p_101"));
        f.add_term(0, 3, poly("3"));
        let step = francoise_decompose(&plane_poly_d(&f)).unwrap();
        assert!(step.r.is_zero());
        assert_eq!(step.big_r, f);
    }

    #[test]
    fn multiples_of_dh_recover_the_multiplier() {
        let mut r = PlanePoly::zero();
        r.add_term(1, 0, poly("q_021"));
        r.add_term(2, 0, poly("-2"));
        let omega = plane_poly_d(&PlanePoly::hamiltonian()).mul_poly(&r);
        let step = francoise_decompose(&omega).unwrap();
        assert!(step.residual(&omega).is_zero());
        assert_eq!(step.r, r);
    }

    #[test]
    fn non_exact_forms_are_rejected() {
        let omega = OneForm::new(PlanePoly::y(), PlanePoly::zero());
        assert_eq!(francoise_decompose(&omega), Err(Error::NotRelativelyExact));
    }
}

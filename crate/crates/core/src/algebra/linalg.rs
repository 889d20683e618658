//! Exact linear algebra: Frac matrices acting on parameter-polynomial vectors.

use num_traits::{One, Zero};

use super::frac::Frac;
use super::param::ParamPoly;
use crate::error::{Error, Result};

pub type FracMatrix = Vec<Vec<Frac>>;

/// Solves the square, nonsingular system `matrix · x = rhs`.
pub fn linear_solve(matrix: &[Vec<Frac>], rhs: &[ParamPoly]) -> Result<Vec<ParamPoly>> {
    let n = matrix.len();
    if rhs.len() != n || matrix.iter().any(|row| row.len() != n) {
        return Err(Error::Underdetermined {
            equations: n,
            unknowns: matrix.first().map_or(0, Vec::len),
        });
    }
    let mut a: FracMatrix = matrix.to_vec();
    let mut b: Vec<ParamPoly> = rhs.to_vec();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for k in col..n {
                let delta = &factor * &a[col][k];
                a[r][k] -= delta;
            }
            b[r] = &b[r] - &b[col].scale(&factor);
        }
    }
    Ok((0..n).map(|k| b[k].scale(&a[k][k].recip())).collect())
}

/// Solves a possibly rectangular system by reduction to row echelon form,
/// pivoting on columns from left to right; free unknowns are set to zero.
pub fn rref_solve(matrix: &[Vec<Frac>], rhs: &[ParamPoly]) -> Result<Vec<ParamPoly>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: FracMatrix = matrix.to_vec();
    let mut b: Vec<ParamPoly> = rhs.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for k in c..cols {
            a[r][k] *= &inv;
        }
        b[r] = b[r].scale(&inv);
        for k in 0..rows {
            if k == r || a[k][c].is_zero() {
                continue;
            }
            let factor = a[k][c].clone();
            for m in c..cols {
                let delta = &factor * &a[r][m];
                a[k][m] -= delta;
            }
            b[k] = &b[k] - &b[r].scale(&factor);
        }
        pivots.push(c);
        r += 1;
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return Err(Error::Inconsistent);
    }
    let mut x = vec![ParamPoly::zero(); cols];
    for (k, &c) in pivots.iter().enumerate() {
        x[c] = b[k].clone();
    }
    Ok(x)
}

pub fn mat_vec(matrix: &[Vec<Frac>], v: &[ParamPoly]) -> Vec<ParamPoly> {
    matrix
        .iter()
        .map(|row| row.iter().zip(v).fold(ParamPoly::zero(), |acc, (a, x)| &acc + &x.scale(a)))
        .collect()
}

pub fn mat_vec_frac(matrix: &[Vec<Frac>], v: &[Frac]) -> Vec<Frac> {
    matrix.iter().map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum()).collect()
}

/// Inverse of a square rational matrix.
pub fn invert(matrix: &[Vec<Frac>]) -> Result<FracMatrix> {
    let n = matrix.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let e: Vec<ParamPoly> =
            (0..n).map(|r| ParamPoly::constant(if r == k { Frac::one() } else { Frac::zero() })).collect();
        let x = linear_solve(matrix, &e)?;
        cols.push(x.into_iter().map(|p| p.as_constant().unwrap()).collect::<Vec<_>>());
    }
    Ok((0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect())
}

/// Determinant over the parameter-polynomial ring by fraction-free
/// (Bareiss) elimination.
pub fn det_poly(matrix: &[Vec<ParamPoly>]) -> ParamPoly {
    let n = matrix.len();
    if n == 0 {
        return ParamPoly::one();
    }
    let mut a: Vec<Vec<ParamPoly>> = matrix.to_vec();
    let mut sign = Frac::one();
    let mut prev = ParamPoly::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return ParamPoly::zero();
        };
        if p != k {
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss step is an exact division");
            }
            a[i][k] = ParamPoly::zero();
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].scale(&sign)
}

pub fn det_frac(matrix: &[Vec<Frac>]) -> Frac {
    let m: Vec<Vec<ParamPoly>> =
        matrix.iter().map(|row| row.iter().cloned().map(ParamPoly::constant).collect()).collect();
    det_poly(&m).as_constant().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac::{fint, frac};
    use crate::algebra::param::poly;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> FracMatrix {
        rows.iter().map(|r| r.iter().map(|&v| fint(v)).collect()).collect()
    }

    fn consts(v: &[i64]) -> Vec<ParamPoly> {
        v.iter().map(|&c| ParamPoly::constant(fint(c))).collect()
    }

    #[test]
    fn identity_and_diagonal() {
        let rhs = vec![poly("p_101 + 1"), poly("q_011")];
        assert_eq!(linear_solve(&m(&[&[1, 0], &[0, 1]]), &rhs).unwrap(), rhs);
        assert_eq!(linear_solve(&m(&[&[2, 0], &[0, 3]]), &consts(&[4, 9])).unwrap(), consts(&[2, 3]));
    }

    #[test]
    fn singular_is_reported() {
        assert_eq!(linear_solve(&m(&[&[1, 2], &[2, 4]]), &consts(&[1, 2])), Err(Error::SingularMatrix));
    }

    #[test]
    fn first_step_of_the_regular_series() {
        // (A0 − 12E)a1 = −A1 a0 with a0 = (1, 5/6, 7/9) in units of 4√2π/27.
        // Upper triangular: −12·x3 = −108, 2·x2 − 15·x3 = −108, −2·x1 + 2·x2 − 15·x3 = −108.
        let a0m = m(&[&[10, 2, -15], &[0, 14, -15], &[0, 0, 0]]);
        let a1m = m(&[&[108, 0, 0], &[-12, 144, 0], &[-12, -24, 180]]);
        let lhs: FracMatrix = (0..3)
            .map(|r| (0..3).map(|c| &a0m[r][c] - if r == c { fint(12) } else { fint(0) }).collect())
            .collect();
        let a0 = [fint(1), frac(5, 6), frac(7, 9)];
        let rhs: Vec<ParamPoly> =
            mat_vec_frac(&a1m, &a0).into_iter().map(|v| ParamPoly::constant(-v)).collect();
        // back substitution by hand: x3 = 9, x2 = 27/2, x1 = 0
        assert_eq!(rhs, consts(&[-108, -108, -108]));
        let x = linear_solve(&lhs, &rhs).unwrap();
        assert_eq!(x, vec![ParamPoly::zero(), ParamPoly::constant(frac(27, 2)), ParamPoly::constant(fint(9))]);
    }

    #[test]
    fn rectangular_systems() {
        // x + y = a, free unknown set to zero
        let x = rref_solve(&m(&[&[1, 1]]), &[poly("p_101")]).unwrap();
        assert_eq!(x, vec![poly("p_101"), ParamPoly::zero()]);
        assert_eq!(rref_solve(&m(&[&[1, 1], &[2, 2]]), &consts(&[1, 3])), Err(Error::Inconsistent));
    }

    #[test]
    fn symbolic_determinant() {
        let a = vec![vec![poly("p_101"), poly("q_011")], vec![poly("1"), poly("p_101 + 2")]];
        assert_eq!(det_poly(&a), poly("p_101^2 + 2*p_101 - q_011"));
        let z = vec![vec![poly("0"), poly("1")], vec![poly("1"), poly("0")]];
        assert_eq!(det_poly(&z), poly("-1"));
    }

    proptest! {
        #[test]
        fn solution_has_zero_residual(entries in prop::collection::vec(-6i64..7, 16), b in prop::collection::vec(-9i64..10, 4)) {
            let a: FracMatrix = entries.chunks(4).map(|r| r.iter().map(|&v| fint(v)).collect()).collect();
            let rhs: Vec<ParamPoly> = b.iter().enumerate()
                .map(|(k, &c)| &ParamPoly::constant(fint(c)) + &poly(&format!("{}*p_10{}", k + 1, 1 + k % 3)))
                .collect();
            match linear_solve(&a, &rhs) {
                Ok(x) => {
                    let back = mat_vec(&a, &x);
                    prop_assert_eq!(back, rhs);
                }
                Err(e) => {
                    prop_assert_eq!(e, Error::SingularMatrix);
                    prop_assert!(det_frac(&a).is_zero());
                }
            }
        }
    }
}

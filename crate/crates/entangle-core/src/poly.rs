//! Univariate complex polynomials: evaluation, interpolation and roots.
//!
//! Coefficient vectors are stored lowest degree first.

use crate::linalg::{general_eigenvalues, CMatrix, C64, ONE, ZERO};

pub fn eval(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
}

fn derivative(coeffs: &[C64]) -> Vec<C64> {
    coeffs.iter().enumerate().skip(1).map(|(k, &a)| a * k as f64).collect()
}

/// Coefficients of the unique polynomial of degree < points.len() through
/// the given samples (Newton divided differences, expanded).
pub fn interpolate(points: &[C64], values: &[C64]) -> Vec<C64> {
    assert_eq!(points.len(), values.len());
    let n = points.len();
    let mut dd = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (points[i] - points[i - j]);
        }
    }
    // Horner-style expansion of the Newton form
    let mut coeffs = vec![ZERO; n];
    for i in (0..n).rev() {
        // coeffs <- coeffs * (z - x_i) + dd[i]
        let mut next = vec![ZERO; n];
        for k in 0..n {
            if coeffs[k] == ZERO {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += coeffs[k];
            }
            next[k] -= coeffs[k] * points[i];
        }
        next[0] += dd[i];
        coeffs = next;
    }
    coeffs
}

/// Finite roots of a polynomial whose leading coefficient is nonzero,
/// from companion-matrix eigenvalues polished by Newton steps.
pub fn roots(coeffs: &[C64]) -> Vec<C64> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    assert!(lead != ZERO, "leading coefficient must be nonzero");
    if deg == 1 {
        return vec![-coeffs[0] / lead];
    }
    let mut comp = CMatrix::zeros(deg, deg);
    for j in 0..deg {
        comp[(0, j)] = -coeffs[deg - 1 - j] / lead;
    }
    for i in 1..deg {
        comp[(i, i - 1)] = ONE;
    }
    let mut zs = general_eigenvalues(&comp);
    let dp = derivative(coeffs);
    for z in zs.iter_mut() {
        for _ in 0..8 {
            let p = eval(coeffs, *z);
            let q = eval(&dp, *z);
            if q.norm() < 1e-300 {
                break;
            }
            let step = p / q;
            let cand = *z - step;
            if eval(coeffs, cand).norm() < p.norm() {
                *z = cand;
            } else {
                break;
            }
        }
    }
    zs
}

//! Roots and SLOCC orbit of the G_abcd family.

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::states::Gabcd;
use crate::symmetry::all_permutations;

/// A = (b^2-c^2)(a^2-d^2), B = (c^2-d^2)(a^2-b^2).
pub fn gabcd_ab(p: &Gabcd) -> (C64, C64) {
    let [a, b, c, d] = p.as_array().map(|z| z * z);
    ((b - c) * (a - d), (c - d) * (a - b))
}

/// The four roots of A z^4 - 2(2B + A) z^2 + A, a normal system
/// {z, 1/z, -z, -1/z}.
pub fn gabcd_roots(p: &Gabcd) -> Result<Vec<C64>> {
    let (a, b) = gabcd_ab(p);
    let tol = 1e-12 * p.as_array().iter().map(|z| z.norm_sqr()).sum::<f64>().powi(2).max(1e-300);
    if a.norm() <= tol || b.norm() <= tol || (a + b * 2.0).norm() <= tol {
        return Err(Error::Degenerate("G_abcd roots need A, B, A + 2B nonzero".into()));
    }
    let s = b * 2.0 + a;
    let disc = (s * s - a * a).sqrt();
    let mut out = Vec::with_capacity(4);
    for u in [(s + disc) / a, (s - disc) / a] {
        let z = u.sqrt();
        out.push(z);
        out.push(-z);
    }
    Ok(out)
}

/// All permutations of (a,b,c,d) with sign flips on none, any two, or all
/// four entries: 24 * 8 = 192 tuples.
pub fn gabcd_orbit(p: &Gabcd) -> Vec<Gabcd> {
    let v = p.as_array();
    let mut signs: Vec<[f64; 4]> = vec![[1.0; 4], [-1.0; 4]];
    for i in 0..4 {
        for j in i + 1..4 {
            let mut s = [1.0; 4];
            s[i] = -1.0;
            s[j] = -1.0;
            signs.push(s);
        }
    }
    let mut out = Vec::with_capacity(192);
    for perm in all_permutations(4) {
        let pv: Vec<C64> = (0..4).map(|i| v[perm.apply(i)]).collect();
        for s in &signs {
            out.push(Gabcd::from_array([pv[0] * s[0], pv[1] * s[1], pv[2] * s[2], pv[3] * s[3]]));
        }
    }
    out
}

/// Membership in the orbit up to a global sign.
pub fn in_orbit(p: &Gabcd, q: &Gabcd, tol: f64) -> bool {
    let target = q.as_array();
    gabcd_orbit(p).iter().any(|t| t.as_array().iter().zip(&target).all(|(x, y)| (x - y).norm() <= tol))
}

//! Local monomial (permutation times diagonal) equivalence.
//!
//! Per-site symbol permutations are found by backtracking on projected
//! supports. For each support match the amplitude ratios must factor as
//! lambda * prod_i x_i(I_i); phases live on the circle, so consistency is
//! decided through the integer left kernel of the incidence matrix.

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::state::PureState;
use std::f64::consts::PI;

pub const LM_TOL: f64 = 1e-8;
const MAX_LOCAL_DIM: usize = 8;

#[derive(Clone, Debug)]
pub struct MonomialWitness {
    /// perms[i][s] is the image of symbol s at site i
    pub perms: Vec<Vec<usize>>,
    /// ops[i] has a single nonzero entry per column
    pub ops: Vec<CMatrix>,
    /// target = scalar * (ops) source
    pub scalar: C64,
}

/// Integer row echelon form H = U M with U unimodular.
struct Echelon {
    u: Vec<Vec<i64>>,
    h: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

fn echelon(m: &[Vec<i64>], cols: usize) -> Echelon {
    let rows = m.len();
    let mut h: Vec<Vec<i64>> = m.to_vec();
    let mut u: Vec<Vec<i64>> = (0..rows).map(|i| (0..rows).map(|j| i64::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero magnitude at or below r
            let Some(p) = (r..rows).filter(|&i| h[i][col] != 0).min_by_key(|&i| h[i][col].abs()) else {
                break;
            };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[i][col] != 0 {
                    let q = h[i][col] / h[r][col];
                    for k in 0..cols {
                        h[i][k] -= q * h[r][k];
                    }
                    for k in 0..rows {
                        u[i][k] -= q * u[r][k];
                    }
                    if h[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][col] != 0 {
            pivots.push(col);
            r += 1;
        }
    }
    Echelon { u, h, pivots }
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Solves M y = x exactly on pivot rows; kernel rows must give integers
    /// (modular) or zeros (real).
    fn solve(&self, x: &[f64], modular: bool, tol: f64) -> Option<Vec<f64>> {
        let rows = self.h.len();
        let t: Vec<f64> = (0..rows).map(|i| self.u[i].iter().zip(x).map(|(&a, &b)| a as f64 * b).sum()).collect();
        for &ti in &t[self.rank()..] {
            let off = if modular { ti - ti.round() } else { ti };
            if off.abs() > tol {
                return None;
            }
        }
        let cols = self.h.first().map_or(0, |r| r.len());
        let mut y = vec![0.0; cols];
        for r in (0..self.rank()).rev() {
            let c = self.pivots[r];
            let rest: f64 = (c + 1..cols).map(|q| self.h[r][q] as f64 * y[q]).sum();
            y[c] = (t[r] - rest) / self.h[r][c] as f64;
        }
        Some(y)
    }
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    crate::symmetry::all_permutations(d).into_iter().map(|p| p.images().to_vec()).collect()
}

/// Sorted projections of a support onto the first `t` sites.
fn projection(support: &[Vec<usize>], t: usize) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = support.iter().map(|i| i[..t].to_vec()).collect();
    v.sort_unstable();
    v
}

/// Searches a monomial operator with psi_b = scalar * (O_1 x ... x O_N) psi_a.
pub fn lm_equivalence(a: &PureState, b: &PureState) -> Result<Option<MonomialWitness>> {
    if a.dims() != b.dims() {
        return Err(Error::Shape("states must share their shape".into()));
    }
    if a.support_size() != b.support_size() || a.support_size() == 0 {
        return Ok(None);
    }
    let dims = a.dims().to_vec();
    let n = dims.len();
    if let Some(&d) = dims.iter().find(|&&d| d > MAX_LOCAL_DIM) {
        return Err(Error::Invalid(format!("local dimension {d} exceeds the search limit {MAX_LOCAL_DIM}")));
    }
    let sup_a: Vec<Vec<usize>> = a.terms().keys().cloned().collect();
    let sup_b: Vec<Vec<usize>> = b.terms().keys().cloned().collect();
    let proj_b: Vec<Vec<Vec<usize>>> = (0..=n).map(|t| projection(&sup_b, t)).collect();

    // unknowns: 0 = scalar, then one per (site, source symbol)
    let offsets: Vec<usize> = dims.iter().scan(1, |acc, &d| {
        let o = *acc;
        *acc += d;
        Some(o)
    }).collect();
    let n_unknowns = 1 + dims.iter().sum::<usize>();
    let m: Vec<Vec<i64>> = sup_a
        .iter()
        .map(|idx| {
            let mut row = vec![0i64; n_unknowns];
            row[0] = 1;
            for (i, &s) in idx.iter().enumerate() {
                row[offsets[i] + s] = 1;
            }
            row
        })
        .collect();
    let ech = echelon(&m, n_unknowns);
    let amps_a: Vec<C64> = sup_a.iter().map(|i| a.amplitude(i)).collect();

    let perms_per_site: Vec<Vec<Vec<usize>>> = dims.iter().map(|&d| permutations(d)).collect();
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut mapped: Vec<Vec<usize>> = vec![Vec::with_capacity(n); sup_a.len()];
    let mut result = None;
    backtrack(
        0,
        &perms_per_site,
        &sup_a,
        &proj_b,
        &mut chosen,
        &mut mapped,
        &mut |perms, images| {
            let ratios: Vec<C64> = images.iter().zip(&amps_a).map(|(img, &x)| b.amplitude(img) / x).collect();
            let phases: Vec<f64> = ratios.iter().map(|z| z.arg() / (2.0 * PI)).collect();
            let logs: Vec<f64> = ratios.iter().map(|z| z.norm().ln()).collect();
            let (Some(yp), Some(yl)) = (ech.solve(&phases, true, LM_TOL), ech.solve(&logs, false, LM_TOL)) else {
                return false;
            };
            let factor = |k: usize| C64::from_polar(yl[k].exp(), 2.0 * PI * yp[k]);
            let ops: Vec<CMatrix> = (0..n)
                .map(|i| {
                    let mut o = CMatrix::zeros(dims[i], dims[i]);
                    for s in 0..dims[i] {
                        o[(perms[i][s], s)] = factor(offsets[i] + s);
                    }
                    o
                })
                .collect();
            let scalar = factor(0);
            let Ok(img) = a.apply_local(&ops) else { return false };
            if img.scale(scalar).approx_eq(b, LM_TOL) {
                result = Some(MonomialWitness { perms: perms.to_vec(), ops, scalar });
                true
            } else {
                false
            }
        },
    );
    Ok(result)
}

fn backtrack(
    site: usize,
    perms: &[Vec<Vec<usize>>],
    sup_a: &[Vec<usize>],
    proj_b: &[Vec<Vec<usize>>],
    chosen: &mut Vec<Vec<usize>>,
    mapped: &mut Vec<Vec<usize>>,
    accept: &mut dyn FnMut(&[Vec<usize>], &[Vec<usize>]) -> bool,
) -> bool {
    if site == perms.len() {
        return accept(chosen, mapped);
    }
    for p in &perms[site] {
        for (img, idx) in mapped.iter_mut().zip(sup_a) {
            img.push(p[idx[site]]);
        }
        let mut proj: Vec<Vec<usize>> = mapped.clone();
        proj.sort_unstable();
        if proj == proj_b[site + 1] {
            chosen.push(p.clone());
            if backtrack(site + 1, perms, sup_a, proj_b, chosen, mapped, accept) {
                return true;
            }
            chosen.pop();
        }
        for img in mapped.iter_mut() {
            img.pop();
        }
    }
    false
}

//! Roots of SLIP measures along the split psi = |0>psi0 + |1>psi1.

use super::mobius::{multiset_distance, ExtendedComplex};
use crate::error::{Error, Result};
use crate::linalg::{c, C64};
use crate::measures::{concurrence_polynomial, hyperdeterminant};
use crate::poly;
use crate::state::PureState;
use serde::Serialize;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlipMeasure {
    /// c00 c11 - c01 c10 on two qubits, degree 2
    Concurrence,
    /// Cayley hyperdeterminant on three qubits, degree 4
    Tau3,
}

impl SlipMeasure {
    pub fn degree(self) -> usize {
        match self {
            SlipMeasure::Concurrence => 2,
            SlipMeasure::Tau3 => 4,
        }
    }

    pub fn arity(self) -> usize {
        match self {
            SlipMeasure::Concurrence => 2,
            SlipMeasure::Tau3 => 3,
        }
    }

    pub fn eval(self, psi: &PureState) -> Result<C64> {
        match self {
            SlipMeasure::Concurrence => concurrence_polynomial(psi),
            SlipMeasure::Tau3 => hyperdeterminant(psi),
        }
    }
}

impl FromStr for SlipMeasure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "concurrence" | "concurrence2" | "c2" => Ok(SlipMeasure::Concurrence),
            "tau3" | "three-tangle" => Ok(SlipMeasure::Tau3),
            _ => Err(Error::Parse(format!("unknown measure `{s}` (concurrence, tau3)"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    pub site: usize,
    pub measure: SlipMeasure,
    pub h: usize,
    #[serde(serialize_with = "ser_roots")]
    pub roots: Vec<ExtendedComplex>,
}

fn ser_roots<S: serde::Serializer>(roots: &[ExtendedComplex], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(roots.iter().map(|r| r.to_string()))
}

impl RootSystem {
    /// Number of roots separated by more than `tol` in chordal distance.
    pub fn distinct(&self, tol: f64) -> Vec<ExtendedComplex> {
        let mut out: Vec<ExtendedComplex> = Vec::new();
        for r in &self.roots {
            if !out.iter().any(|o| o.chordal(r) <= tol) {
                out.push(*r);
            }
        }
        out
    }

    pub fn n_distinct(&self, tol: f64) -> usize {
        self.distinct(tol).len()
    }

    pub fn matches(&self, other: &RootSystem, tol: f64) -> bool {
        multiset_distance(&self.roots, &other.roots) <= tol
    }
}

/// psi = |0>_site psi0 + |1>_site psi1; the remaining sites keep their order.
pub fn split_state(psi: &PureState, site: usize) -> Result<(PureState, PureState)> {
    let n = psi.n_sites();
    if site >= n {
        return Err(Error::SiteOutOfRange { site, n });
    }
    if psi.dims()[site] != 2 {
        return Err(Error::Shape(format!("site {site} is not a qubit")));
    }
    let rest: Vec<usize> = psi.dims().iter().enumerate().filter(|&(s, _)| s != site).map(|(_, &d)| d).collect();
    let mut parts = [PureState::zero(&rest)?, PureState::zero(&rest)?];
    for (idx, &a) in psi.terms() {
        let mut sub = idx.clone();
        let bit = sub.remove(site);
        parts[bit].add(&sub, a)?;
    }
    let [p0, p1] = parts;
    Ok((p0, p1))
}

const SAMPLES: [(f64, f64); 6] = [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (2.0, 0.0)];

/// Coefficients (lowest first) of E(z psi0 + psi1), by interpolation.
pub fn slip_polynomial(psi: &PureState, site: usize, measure: SlipMeasure) -> Result<Vec<C64>> {
    if psi.n_sites() != measure.arity() + 1 {
        return Err(Error::Shape(format!(
            "{:?} roots need {} qubits, got {}",
            measure,
            measure.arity() + 1,
            psi.n_sites()
        )));
    }
    let (p0, p1) = split_state(psi, site)?;
    let h = measure.degree();
    let pts: Vec<C64> = SAMPLES[..=h].iter().map(|&(re, im)| c(re, im)).collect();
    let mut vals = Vec::with_capacity(h + 1);
    for &z in &pts {
        let mut pz = p1.clone();
        for (idx, &a) in p0.terms() {
            pz.add(idx, a * z)?;
        }
        vals.push(measure.eval(&pz)?);
    }
    Ok(poly::interpolate(&pts, &vals))
}

/// The h roots of the SLIP polynomial; a degree drop of k gives k roots at
/// infinity.
pub fn slip_roots(psi: &PureState, site: usize, measure: SlipMeasure) -> Result<RootSystem> {
    let coeffs = slip_polynomial(psi, site, measure)?;
    let h = measure.degree();
    let scale = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale < 1e-14 {
        return Err(Error::Degenerate("the SLIP polynomial vanishes identically; every z is a root".into()));
    }
    let mut deg = h;
    while coeffs[deg].norm() <= 1e-10 * scale {
        deg -= 1;
    }
    let mut roots: Vec<ExtendedComplex> = if deg == 0 {
        Vec::new()
    } else {
        poly::roots(&coeffs[..=deg]).into_iter().map(ExtendedComplex::finite).collect()
    };
    roots.extend(std::iter::repeat(ExtendedComplex::infinity()).take(h - deg));
    Ok(RootSystem { site, measure, h, roots })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{ghz, w};

    #[test]
    fn split_ghz_w() {
        let g = ghz(3, 2).unwrap();
        let wst = w(3).unwrap();
        let mixed = PureState::basis(&[2], &[0]).unwrap().kron(&g).scale(c(0.5f64.sqrt(), 0.0));
        let mut psi = mixed;
        for (idx, &a) in PureState::basis(&[2], &[1]).unwrap().kron(&wst).terms() {
            psi.add(idx, a * 0.5f64.sqrt()).unwrap();
        }
        let (p0, p1) = split_state(&psi, 0).unwrap();
        assert!(p0.approx_eq(&g.scale(c(0.5f64.sqrt(), 0.0)), 1e-15));
        assert!(p1.approx_eq(&wst.scale(c(0.5f64.sqrt(), 0.0)), 1e-15));
        let (q0, q1) = split_state(&g, 1).unwrap();
        assert_eq!(q0.support_size(), 1);
        assert!((q1.amplitude(&[1, 1]) - c(0.5f64.sqrt(), 0.0)).norm() < 1e-15);
        let r = slip_roots(&psi, 0, SlipMeasure::Tau3).unwrap();
        assert_eq!(r.roots.len(), 4);
        assert!(r.roots.iter().all(|z| !z.is_infinite()));
        assert_eq!(r.n_distinct(1e-6), 4);
    }

    #[test]
    fn ghz_two_roots_w_one() {
        for s in 0..3 {
            assert_eq!(slip_roots(&ghz(3, 2).unwrap(), s, SlipMeasure::Concurrence).unwrap().n_distinct(1e-6), 2);
            assert_eq!(slip_roots(&w(3).unwrap(), s, SlipMeasure::Concurrence).unwrap().n_distinct(1e-6), 1);
        }
    }

    #[test]
    fn wrong_arity() {
        assert!(slip_roots(&ghz(3, 2).unwrap(), 0, SlipMeasure::Tau3).is_err());
        assert!("tau4".parse::<SlipMeasure>().is_err());
    }
}

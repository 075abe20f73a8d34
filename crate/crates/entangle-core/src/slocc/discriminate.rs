//! Finite search for a local determinant-one operator relating two states.

use super::mobius::{mobius_from_triplets, multiset_distance, operator_from_mobius, ExtendedComplex};
use super::roots::{slip_roots, RootSystem, SlipMeasure};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::state::PureState;

/// Tolerance for Moebius candidates to carry one root set onto the other.
pub const ROOT_MATCH_TOL: f64 = 1e-6;
/// Relative tolerance of the final proportionality test.
pub const PROPORTIONALITY_TOL: f64 = 1e-8;
/// Roots closer than this are treated as coincident.
pub const DISTINCT_TOL: f64 = 1e-6;

/// Operators O_1 x ... x O_n, each of determinant one.
#[derive(Clone, Debug)]
pub struct LocalOperator {
    pub ops: Vec<CMatrix>,
}

impl LocalOperator {
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        for o in &ops {
            if o.rows() != 2 || o.cols() != 2 || (o.det2() - C64::new(1.0, 0.0)).norm() > 1e-10 {
                return Err(Error::Invalid("local operators must be 2x2 with determinant one".into()));
            }
        }
        Ok(LocalOperator { ops })
    }

    pub fn apply(&self, psi: &PureState) -> Result<PureState> {
        psi.apply_local(&self.ops)
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub op: LocalOperator,
    /// target = scalar * op(source)
    pub scalar: C64,
}

/// scalar with target = scalar * phi, if one exists within the tolerance.
pub fn proportionality(target: &PureState, phi: &PureState, tol: f64) -> Option<C64> {
    let (anchor, &ta) = target.terms().iter().max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())?;
    let pa = phi.amplitude(anchor);
    if pa.norm() <= tol * ta.norm() {
        return None;
    }
    let lam = ta / pa;
    let bound = tol * ta.norm();
    let ok = target.terms().iter().all(|(i, &t)| (t - lam * phi.amplitude(i)).norm() <= bound)
        && phi.terms().iter().all(|(i, &p)| (target.amplitude(i) - lam * p).norm() <= bound);
    ok.then_some(lam)
}

/// Moebius maps taking root system a onto b, fixed by where three distinct
/// roots of a go: 3! C(h,3) ordered choices among the roots of b.
pub fn candidate_maps(a: &RootSystem, b: &RootSystem) -> Result<Vec<CMatrix>> {
    let da = a.distinct(DISTINCT_TOL);
    let db = b.distinct(DISTINCT_TOL);
    if da.len() < 3 || db.len() < 3 {
        return Err(Error::Inapplicable(format!(
            "site {} has fewer than three distinct roots ({} and {})",
            a.site,
            da.len(),
            db.len()
        )));
    }
    let src = [da[0], da[1], da[2]];
    let mut out = Vec::new();
    let k = db.len();
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            for l in (0..k).filter(|&l| l != i && l != j) {
                let m = mobius_from_triplets(&src, &[db[i], db[j], db[l]])?;
                let img: Vec<ExtendedComplex> = a.roots.iter().map(|z| m.apply(z)).collect();
                if multiset_distance(&img, &b.roots) <= ROOT_MATCH_TOL {
                    out.push(operator_from_mobius(&m));
                }
            }
        }
    }
    Ok(out)
}

/// Searches O with psi_b proportional to O psi_a, site by site over the
/// root-matching candidates.
pub fn slocc_discriminate(a: &PureState, b: &PureState, measure: SlipMeasure) -> Result<Option<Witness>> {
    if a.dims() != b.dims() {
        return Err(Error::Shape("states must share their shape".into()));
    }
    if !a.is_qubits() {
        return Err(Error::Shape("discrimination works on qubits".into()));
    }
    let n = a.n_sites();
    let mut cands = Vec::with_capacity(n);
    for s in 0..n {
        let ra = slip_roots(a, s, measure)?;
        let rb = slip_roots(b, s, measure)?;
        cands.push(candidate_maps(&ra, &rb)?);
    }
    if cands.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let search = |o0: &CMatrix| -> Result<Option<Witness>> {
        let start = a.apply(&[0], o0)?;
        let mut chosen = vec![o0.clone()];
        descend(&start, 1, &cands, &mut chosen, b)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let found: Vec<Option<Witness>> = cands[0].par_iter().map(search).collect::<Result<_>>()?;
        Ok(found.into_iter().flatten().next())
    }
    #[cfg(not(feature = "parallel"))]
    {
        for o0 in &cands[0] {
            if let Some(w) = search(o0)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

fn descend(
    cur: &PureState,
    site: usize,
    cands: &[Vec<CMatrix>],
    chosen: &mut Vec<CMatrix>,
    target: &PureState,
) -> Result<Option<Witness>> {
    if site == cands.len() {
        return Ok(proportionality(target, cur, PROPORTIONALITY_TOL)
            .map(|scalar| Witness { op: LocalOperator { ops: chosen.clone() }, scalar }));
    }
    for o in &cands[site] {
        let next = cur.apply(&[site], o)?;
        chosen.push(o.clone());
        if let Some(w) = descend(&next, site + 1, cands, chosen, target)? {
            return Ok(Some(w));
        }
        chosen.pop();
    }
    Ok(None)
}

//! Entanglement quantifiers and verdicts.

use crate::algebra::combinations;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, CMatrix, C64};
use crate::state::{partial_trace, DensityMatrix, PureState};
use serde::Serialize;
use std::collections::BTreeMap;

/// Smallest partial-transpose eigenvalue still counted as non-negative.
pub const PPT_TOL: f64 = 1e-9;
/// Max-norm tolerance of k-uniformity checks.
pub const UNIFORM_TOL: f64 = 1e-9;

fn require_qubits(psi: &PureState, n: Option<usize>) -> Result<()> {
    if let Some(n) = n {
        if psi.n_sites() != n {
            return Err(Error::Shape(format!("expected {n} qubits, got {} sites", psi.n_sites())));
        }
    }
    if !psi.is_qubits() {
        return Err(Error::Shape("concurrence-based measures need qubit sites".into()));
    }
    Ok(())
}

/// c00 c11 - c01 c10, the complex polynomial behind the concurrence.
pub fn concurrence_polynomial(psi: &PureState) -> Result<C64> {
    require_qubits(psi, Some(2))?;
    let a = |i: usize, j: usize| psi.amplitude(&[i, j]);
    Ok(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0))
}

/// 2|c00 c11 - c01 c10|.
pub fn concurrence_pure(psi: &PureState) -> Result<f64> {
    Ok(2.0 * concurrence_polynomial(psi)?.norm())
}

/// Wootters concurrence. The square roots of the eigenvalues of rho rho~
/// equal the singular values of tau_ij = v_i^T (Y x Y) v_j, where rho =
/// sum_i v_i v_i^dagger; working with tau keeps pure inputs exact.
pub fn concurrence_mixed(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims != [2, 2] {
        return Err(Error::Shape(format!("concurrence needs a two-qubit density matrix, got dims {:?}", rho.dims)));
    }
    let eig = hermitian_eigen(&rho.mat)?;
    if eig.values.iter().any(|&v| v < -1e-9) || (rho.trace().re - 1.0).abs() > 1e-8 {
        return Err(Error::Invalid("density matrix is not positive with unit trace".into()));
    }
    let cutoff = 1e-14 * eig.values[0].max(1.0);
    let vecs: Vec<Vec<C64>> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > cutoff)
        .map(|(j, &v)| eig.vectors.column(j).into_iter().map(|z| z * v.sqrt()).collect())
        .collect();
    // Y x Y maps |00>,|01>,|10>,|11> to -|11>,|10>,|01>,-|00>
    let flip = |v: &[C64]| [-v[3], v[2], v[1], -v[0]];
    let k = vecs.len();
    let mut tau = CMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let f = flip(&vecs[j]);
            tau[(i, j)] = (0..4).map(|t| vecs[i][t] * f[t]).sum();
        }
    }
    let gram = &tau.adjoint() * &tau;
    let mut s: Vec<f64> = hermitian_eigenvalues(&gram)?.into_iter().map(|x| x.max(0.0).sqrt()).collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s.resize(4, 0.0);
    Ok((s[0] - s[1] - s[2] - s[3]).max(0.0))
}

/// Wootters concurrence of the reduction onto sites v and w.
pub fn two_site_concurrence(psi: &PureState, v: usize, w: usize) -> Result<f64> {
    require_qubits(psi, None)?;
    if v == w {
        return Err(Error::Invalid("two-site concurrence needs distinct sites".into()));
    }
    concurrence_mixed(&partial_trace(psi, &[v, w])?)
}

/// C_{v|rest} = 2 sqrt(det rho_v).
pub fn generalized_concurrence(psi: &PureState, v: usize) -> Result<f64> {
    require_qubits(psi, None)?;
    let rho = partial_trace(psi, &[v])?;
    Ok(2.0 * rho.mat.det2().re.max(0.0).sqrt())
}

/// sum_w C_vw^2 / C_{v|rest}^2.
pub fn entanglement_ratio(psi: &PureState, v: usize) -> Result<f64> {
    let g = generalized_concurrence(psi, v)?;
    if g < 1e-12 {
        return Err(Error::Degenerate(format!("site {v} is not entangled with the rest")));
    }
    let mut sum = 0.0;
    for w in (0..psi.n_sites()).filter(|&w| w != v) {
        sum += two_site_concurrence(psi, v, w)?.powi(2);
    }
    Ok(sum / (g * g))
}

/// Cayley hyperdeterminant of the 2x2x2 amplitude tensor.
pub fn hyperdeterminant(psi: &PureState) -> Result<C64> {
    require_qubits(psi, Some(3))?;
    let a = |i: usize, j: usize, k: usize| psi.amplitude(&[i, j, k]);
    let (a000, a001, a010, a011) = (a(0, 0, 0), a(0, 0, 1), a(0, 1, 0), a(0, 1, 1));
    let (a100, a101, a110, a111) = (a(1, 0, 0), a(1, 0, 1), a(1, 1, 0), a(1, 1, 1));
    let sq = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101
        + a100 * a100 * a011 * a011;
    let cross = a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001;
    let quad = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
    Ok(sq - cross * 2.0 + quad * 4.0)
}

/// 4 |Det(c)|.
pub fn three_tangle(psi: &PureState) -> Result<f64> {
    Ok(4.0 * hyperdeterminant(psi)?.norm())
}

pub fn min_pt_eigenvalue(rho: &DensityMatrix, sites: &[usize]) -> Result<f64> {
    if sites.is_empty() || sites.len() >= rho.dims.len() {
        return Err(Error::Invalid("bipartition must leave both sides nonempty".into()));
    }
    let pt = rho.partial_transpose(sites)?;
    Ok(hermitian_eigenvalues(&pt)?.into_iter().fold(f64::INFINITY, f64::min))
}

/// All eigenvalues of the partial transpose on `sites` are >= -PPT_TOL.
pub fn is_ppt(rho: &DensityMatrix, sites: &[usize]) -> Result<bool> {
    Ok(min_pt_eigenvalue(rho, sites)? >= -PPT_TOL)
}

/// Entanglement verdict for 2x2 and 2x3 systems, where PPT is decisive.
pub fn entangled_2x2(rho: &DensityMatrix) -> Result<bool> {
    let mut d = rho.dims.clone();
    d.sort_unstable();
    if d != [2, 2] && d != [2, 3] {
        return Err(Error::Shape(format!("PPT is decisive only for 2x2 and 2x3 systems, got {:?}", rho.dims)));
    }
    Ok(!is_ppt(rho, &[0])?)
}

/// Uniformity of every reduction onto k sites.
pub fn is_k_uniform(psi: &PureState, k: usize, tol: f64) -> Result<bool> {
    let n = psi.n_sites();
    if k == 0 {
        return Ok(true);
    }
    if k > n / 2 {
        return Ok(false);
    }
    let subsets = combinations(n, k);
    let check = |s: &Vec<usize>| -> Result<bool> { Ok(partial_trace(psi, s)?.distance_to_maximally_mixed() <= tol) };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let res: Result<Vec<bool>> = subsets.par_iter().map(check).collect();
        Ok(res?.into_iter().all(|b| b))
    }
    #[cfg(not(feature = "parallel"))]
    {
        for s in &subsets {
            if !check(s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Largest k <= N/2 with all k-site reductions maximally mixed.
pub fn k_uniformity(psi: &PureState) -> Result<usize> {
    k_uniformity_tol(psi, UNIFORM_TOL)
}

pub fn k_uniformity_tol(psi: &PureState, tol: f64) -> Result<usize> {
    let mut k = 0;
    while k < psi.n_sites() / 2 && is_k_uniform(psi, k + 1, tol)? {
        k += 1;
    }
    Ok(k)
}

pub fn is_ame(psi: &PureState) -> Result<bool> {
    Ok(psi.n_sites() >= 2 && k_uniformity(psi)? == psi.n_sites() / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Single site, diagonal matrix, NPT witness, or PPT on 2x2 / 2x3.
    Decisive,
    /// PPT across every bipartition of a larger system.
    PptProxy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    AllEntangled,
    AllSeparable,
    MixedVerdicts,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionVerdict {
    pub kept: Vec<usize>,
    pub entangled: bool,
    pub method: Method,
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeVerdict {
    pub verdict: Verdict,
    /// PptProxy when any separable verdict at this size rests on PPT alone.
    pub method: Method,
    pub reductions: Vec<ReductionVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResistanceReport {
    /// Whether the pure state itself is entangled.
    pub entangled: bool,
    pub m: Option<usize>,
    /// Keyed by the number of parties traced out.
    pub per_size: BTreeMap<usize, SizeVerdict>,
}

fn bipartitions_with_first(k: usize) -> impl Iterator<Item = Vec<usize>> {
    // subsets of 0..k that contain 0 and are proper
    (0..(1usize << (k - 1)) - 1).map(move |mask| {
        let mut s = vec![0];
        s.extend((1..k).filter(|i| mask >> (i - 1) & 1 == 1));
        s
    })
}

/// Verdict on a reduced state: NPT on some bipartition means entangled.
pub fn classify_reduction(rho: &DensityMatrix) -> Result<(bool, Method)> {
    let k = rho.dims.len();
    if k <= 1 || rho.is_diagonal(1e-12) {
        return Ok((false, Method::Decisive));
    }
    for part in bipartitions_with_first(k) {
        if !is_ppt(rho, &part)? {
            return Ok((true, Method::Decisive));
        }
    }
    let mut d = rho.dims.clone();
    d.sort_unstable();
    let decisive = d == [2, 2] || d == [2, 3];
    Ok((false, if decisive { Method::Decisive } else { Method::PptProxy }))
}

/// Entanglement of every reduction after tracing out t = 1..N-1 parties.
pub fn resistance(psi: &PureState) -> Result<ResistanceReport> {
    let n = psi.n_sites();
    if n < 2 {
        return Err(Error::Invalid("resistance needs at least two parties".into()));
    }
    let entangled = (0..n).any(|s| {
        partial_trace(psi, &[s]).map(|r| hermitian_eigenvalues(&r.mat).map(|v| v[0] < 1.0 - 1e-9).unwrap_or(false)).unwrap_or(false)
    });
    let mut per_size = BTreeMap::new();
    for t in 1..n {
        let subsets = combinations(n, n - t);
        let judge = |kept: &Vec<usize>| -> Result<ReductionVerdict> {
            let (entangled, method) = classify_reduction(&partial_trace(psi, kept)?)?;
            Ok(ReductionVerdict { kept: kept.clone(), entangled, method })
        };
        #[cfg(feature = "parallel")]
        let reductions: Vec<ReductionVerdict> = {
            use rayon::prelude::*;
            subsets.par_iter().map(judge).collect::<Result<_>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let reductions: Vec<ReductionVerdict> = subsets.iter().map(judge).collect::<Result<_>>()?;
        let n_ent = reductions.iter().filter(|r| r.entangled).count();
        let verdict = if n_ent == reductions.len() {
            Verdict::AllEntangled
        } else if n_ent == 0 {
            Verdict::AllSeparable
        } else {
            Verdict::MixedVerdicts
        };
        let method = if reductions.iter().any(|r| !r.entangled && r.method == Method::PptProxy) {
            Method::PptProxy
        } else {
            Method::Decisive
        };
        per_size.insert(t, SizeVerdict { verdict, method, reductions });
    }
    let m = if !entangled {
        None
    } else {
        let mut m = 0;
        while m + 1 < n && per_size[&(m + 1)].verdict == Verdict::AllEntangled {
            m += 1;
        }
        (m + 1 < n && per_size[&(m + 1)].verdict == Verdict::AllSeparable).then_some(m)
    };
    Ok(ResistanceReport { entangled, m, per_size })
}

/// Pairwise Wootters concurrences, zero on the diagonal.
pub fn concurrence_matrix(psi: &PureState) -> Result<Vec<Vec<f64>>> {
    let n = psi.n_sites();
    let mut out = vec![vec![0.0; n]; n];
    for v in 0..n {
        for w in v + 1..n {
            let c = two_site_concurrence(psi, v, w)?;
            out[v][w] = c;
            out[w][v] = c;
        }
    }
    Ok(out)
}

//! Sparse pure states and reduced density matrices.
//!
//! Sites are numbered from 0 in the library; site 0 is the most significant
//! digit of the basis index, so `|i_0 i_1 ... i_{N-1}>` reads left to right.

use crate::error::{Error, Result};
use crate::linalg::{digits, linear_index, partial_transpose_matrix, CMatrix, C64, ZERO};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::path::Path;

/// Amplitudes below this modulus are not stored.
pub const PRUNE: f64 = 1e-15;

#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    terms: BTreeMap<Vec<usize>, C64>,
    normalized: bool,
}

impl PureState {
    pub fn zero(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d < 2) {
            return Err(Error::Invalid(format!("local dimensions must be >= 2, got {dims:?}")));
        }
        Ok(PureState { dims: dims.to_vec(), terms: BTreeMap::new(), normalized: false })
    }

    pub fn qubits(n: usize) -> Self {
        Self::zero(&vec![2; n]).expect("qubit dims are valid")
    }

    pub fn basis(dims: &[usize], idx: &[usize]) -> Result<Self> {
        let mut s = Self::zero(dims)?;
        s.add(idx, C64::new(1.0, 0.0))?;
        s.normalized = true;
        Ok(s)
    }

    /// Builds a state from (index, amplitude) pairs, accumulating repeats.
    pub fn from_terms<I>(dims: &[usize], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, C64)>,
    {
        let mut s = Self::zero(dims)?;
        for (idx, a) in terms {
            s.add(&idx, a)?;
        }
        Ok(s)
    }

    /// Dense vector in row-major order.
    pub fn from_dense(dims: &[usize], amps: &[C64]) -> Result<Self> {
        let total: usize = dims.iter().product();
        if amps.len() != total {
            return Err(Error::Shape(format!("{} amplitudes for dimension {total}", amps.len())));
        }
        let mut s = Self::zero(dims)?;
        for (k, &a) in amps.iter().enumerate() {
            if a.norm() >= PRUNE {
                s.terms.insert(digits(k, dims), a);
            }
        }
        Ok(s)
    }

    pub fn add(&mut self, idx: &[usize], a: C64) -> Result<()> {
        self.check_index(idx)?;
        if !a.is_finite() {
            return Err(Error::Invalid("non-finite amplitude".into()));
        }
        let entry = self.terms.entry(idx.to_vec()).or_insert(ZERO);
        *entry += a;
        if entry.norm() < PRUNE {
            self.terms.remove(idx);
        }
        self.normalized = false;
        Ok(())
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.dims.len() {
            return Err(Error::Shape(format!("index of length {} for {} sites", idx.len(), self.dims.len())));
        }
        for (k, (&i, &d)) in idx.iter().zip(&self.dims).enumerate() {
            if i >= d {
                return Err(Error::Invalid(format!("index {i} at site {k} exceeds local dimension {d}")));
            }
        }
        Ok(())
    }

    pub fn n_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_qubits(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, C64> {
        &self.terms
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn amplitude(&self, idx: &[usize]) -> C64 {
        self.terms.get(idx).copied().unwrap_or(ZERO)
    }

    pub fn norm(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(mut self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::Degenerate("cannot normalize the zero vector".into()));
        }
        for a in self.terms.values_mut() {
            *a /= n;
        }
        self.normalized = true;
        Ok(self)
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = PureState { dims: self.dims.clone(), terms: BTreeMap::new(), normalized: false };
        for (k, &a) in &self.terms {
            let v = a * s;
            if v.norm() >= PRUNE {
                out.terms.insert(k.clone(), v);
            }
        }
        out.normalized = self.normalized && (s.norm() - 1.0).abs() < 1e-12;
        out
    }

    /// <self|other>
    pub fn inner(&self, other: &PureState) -> C64 {
        let (small, large, flip) =
            if self.terms.len() <= other.terms.len() { (self, other, false) } else { (other, self, true) };
        let mut acc = ZERO;
        for (k, &a) in &small.terms {
            if let Some(&b) = large.terms.get(k) {
                acc += if flip { b.conj() * a } else { a.conj() * b };
            }
        }
        acc
    }

    /// |<self|other>|^2 for normalized inputs.
    pub fn fidelity(&self, other: &PureState) -> f64 {
        self.inner(other).norm_sqr() / (self.norm().powi(2) * other.norm().powi(2))
    }

    /// Equality up to a global phase (and normalization) within `tol` on
    /// the fidelity.
    pub fn projectively_eq(&self, other: &PureState, tol: f64) -> bool {
        self.dims == other.dims && (1.0 - self.fidelity(other)).abs() <= tol
    }

    /// Entrywise comparison.
    pub fn approx_eq(&self, other: &PureState, tol: f64) -> bool {
        if self.dims != other.dims {
            return false;
        }
        let keys: std::collections::BTreeSet<&Vec<usize>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|k| (self.amplitude(k) - other.amplitude(k)).norm() <= tol)
    }

    pub fn kron(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut terms = BTreeMap::new();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                terms.insert(idx, x * y);
            }
        }
        PureState { dims, terms, normalized: self.normalized && other.normalized }
    }

    pub fn to_dense(&self) -> Vec<C64> {
        let total: usize = self.dims.iter().product();
        let mut v = vec![ZERO; total];
        for (k, &a) in &self.terms {
            v[linear_index(k, &self.dims)] = a;
        }
        v
    }

    /// Applies a matrix acting on the listed sites (first listed site most
    /// significant in the matrix index).
    pub fn apply(&self, sites: &[usize], op: &CMatrix) -> Result<PureState> {
        let sub_dims: Vec<usize> = sites
            .iter()
            .map(|&s| self.dims.get(s).copied().ok_or(Error::SiteOutOfRange { site: s, n: self.dims.len() }))
            .collect::<Result<_>>()?;
        let dim: usize = sub_dims.iter().product();
        if op.rows() != dim || op.cols() != dim {
            return Err(Error::Shape(format!("operator of order {} on sites {:?} of dims {:?}", op.rows(), sites, sub_dims)));
        }
        let mut seen = vec![false; self.dims.len()];
        for &s in sites {
            if seen[s] {
                return Err(Error::Invalid(format!("site {s} repeated")));
            }
            seen[s] = true;
        }
        let mut out = PureState { dims: self.dims.clone(), terms: BTreeMap::new(), normalized: false };
        for (idx, &a) in &self.terms {
            let local: Vec<usize> = sites.iter().map(|&s| idx[s]).collect();
            let col = linear_index(&local, &sub_dims);
            for row in 0..dim {
                let m = op[(row, col)];
                if m == ZERO {
                    continue;
                }
                let new_local = digits(row, &sub_dims);
                let mut new_idx = idx.clone();
                for (&s, &v) in sites.iter().zip(&new_local) {
                    new_idx[s] = v;
                }
                *out.terms.entry(new_idx).or_insert(ZERO) += m * a;
            }
        }
        out.terms.retain(|_, a| a.norm() >= PRUNE);
        Ok(out)
    }

    /// Applies one single-site operator per site.
    pub fn apply_local(&self, ops: &[CMatrix]) -> Result<PureState> {
        if ops.len() != self.n_sites() {
            return Err(Error::Shape(format!("{} local operators for {} sites", ops.len(), self.n_sites())));
        }
        let mut cur = self.clone();
        for (s, op) in ops.iter().enumerate() {
            cur = cur.apply(&[s], op)?;
        }
        Ok(cur)
    }

    pub fn to_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        let file = StateFile {
            sites: self.n_sites(),
            dims: self.dims.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| TermRecord { idx: k.clone(), re: a.re, im: a.im })
                .collect(),
            normalized: self.normalized,
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text)?;
        if file.sites != file.dims.len() {
            return Err(Error::Shape(format!("\"sites\" is {} but {} dims given", file.sites, file.dims.len())));
        }
        let mut s = PureState::zero(&file.dims)?;
        for t in file.terms {
            s.add(&t.idx, C64::new(t.re, t.im))?;
        }
        if file.normalized {
            let n = s.norm();
            if (n * n - 1.0).abs() > 1e-12 {
                return Err(Error::Invalid(format!("state flagged normalized has squared norm {}", n * n)));
            }
            s.normalized = true;
        }
        Ok(s)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    idx: Vec<usize>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    sites: usize,
    dims: Vec<usize>,
    terms: Vec<TermRecord>,
    normalized: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    pub dims: Vec<usize>,
    pub mat: CMatrix,
}

impl DensityMatrix {
    pub fn new(dims: Vec<usize>, mat: CMatrix) -> Result<Self> {
        let n: usize = dims.iter().product();
        if mat.rows() != n || mat.cols() != n {
            return Err(Error::Shape(format!("matrix of order {} for dims {:?}", mat.rows(), dims)));
        }
        Ok(DensityMatrix { dims, mat })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let v = psi.to_dense();
        let n = v.len();
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            if v[i] == ZERO {
                continue;
            }
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        DensityMatrix { dims: psi.dims().to_vec(), mat: m }
    }

    pub fn order(&self) -> usize {
        self.mat.rows()
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    /// Partial transpose on the listed subsystems.
    pub fn partial_transpose(&self, sites: &[usize]) -> Result<CMatrix> {
        partial_transpose_matrix(&self.mat, &self.dims, sites)
    }

    /// Max-norm distance to Id/dim.
    pub fn distance_to_maximally_mixed(&self) -> f64 {
        let n = self.order();
        let target = 1.0 / n as f64;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let t = if i == j { target } else { 0.0 };
                worst = worst.max((self.mat[(i, j)] - C64::new(t, 0.0)).norm());
            }
        }
        worst
    }

    /// True when every off-diagonal entry is below `tol`.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| i == j || self.mat[(i, j)].norm() <= tol))
    }
}

/// Reduced state on `keep` (ascending site order in the result).
pub fn partial_trace(psi: &PureState, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptySites);
    }
    let n = psi.n_sites();
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    for &s in &keep_sorted {
        if s >= n {
            return Err(Error::SiteOutOfRange { site: s, n });
        }
    }
    let rest: Vec<usize> = (0..n).filter(|s| !keep_sorted.contains(s)).collect();
    let kdims: Vec<usize> = keep_sorted.iter().map(|&s| psi.dims()[s]).collect();
    let dim: usize = kdims.iter().product();
    let mut groups: HashMap<Vec<usize>, Vec<(usize, C64)>> = HashMap::new();
    for (idx, &a) in psi.terms() {
        let env: Vec<usize> = rest.iter().map(|&s| idx[s]).collect();
        let local: Vec<usize> = keep_sorted.iter().map(|&s| idx[s]).collect();
        groups.entry(env).or_default().push((linear_index(&local, &kdims), a));
    }
    let mut m = CMatrix::zeros(dim, dim);
    for members in groups.values() {
        for &(i, a) in members {
            for &(j, b) in members {
                m[(i, j)] += a * b.conj();
            }
        }
    }
    Ok(DensityMatrix { dims: kdims, mat: m })
}

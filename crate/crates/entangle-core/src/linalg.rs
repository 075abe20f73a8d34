//! Small dense complex matrices and a cyclic Jacobi Hermitian eigensolver.
//!
//! Indices are row-major with the left tensor factor most significant, so
//! `kron(a, b)[(i*rb + k, j*cb + l)] = a[(i, j)] * b[(k, l)]`.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Default admission tolerance for Hermiticity.
pub const HERMITIAN_TOL: f64 = 1e-8;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        CMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nr * nc);
        for row in rows {
            assert_eq!(row.len(), nc, "ragged rows");
            data.extend_from_slice(row);
        }
        CMatrix { rows: nr, cols: nc, data }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn diag(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn det2(&self) -> C64 {
        assert!(self.rows == 2 && self.cols == 2);
        self[(0, 0)] * self[(1, 1)] - self[(0, 1)] * self[(1, 0)]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// max |m_ij - conj(m_ji)|
    pub fn hermiticity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// max-norm deviation of M†M from the identity.
    pub fn unitarity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let g = &self.adjoint() * self;
        let mut worst: f64 = 0.0;
        for i in 0..g.rows {
            for j in 0..g.cols {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((g[(i, j)] - target).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() < tol
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| (a - b).norm() <= tol)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Kronecker product, left factor most significant.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a[(i, j)];
            if x == ZERO {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = x * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Mixed-radix digits of `index`, first digit most significant.
pub fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

pub fn linear_index(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

/// Transposes the indices of the subsystems in `sites` of a matrix acting on
/// `dims`.
pub fn partial_transpose_matrix(m: &CMatrix, dims: &[usize], sites: &[usize]) -> Result<CMatrix> {
    let n: usize = dims.iter().product();
    if m.rows != n || m.cols != n {
        return Err(Error::Shape(format!("matrix of order {} does not act on dims {:?}", m.rows, dims)));
    }
    for &s in sites {
        if s >= dims.len() {
            return Err(Error::SiteOutOfRange { site: s, n: dims.len() });
        }
    }
    let all: Vec<Vec<usize>> = (0..n).map(|i| digits(i, dims)).collect();
    let mut out = CMatrix::zeros(n, n);
    for r in 0..n {
        for col in 0..n {
            let v = m[(r, col)];
            if v == ZERO {
                continue;
            }
            let mut a = all[r].clone();
            let mut b = all[col].clone();
            for &s in sites {
                std::mem::swap(&mut a[s], &mut b[s]);
            }
            out[(linear_index(&a, dims), linear_index(&b, dims))] = v;
        }
    }
    Ok(out)
}

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are returned in
/// descending order; column `k` of the matrix holds the eigenvector of the
/// `k`-th eigenvalue.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

pub fn hermitian_eigen(m: &CMatrix) -> Result<Eigen> {
    hermitian_eigen_tol(m, HERMITIAN_TOL)
}

/// Jacobi sweeps on each connected block of the sparsity pattern
/// separately; partial transposes of sparse states split into many small
/// blocks.
pub fn hermitian_eigen_tol(m: &CMatrix, herm_tol: f64) -> Result<Eigen> {
    if !m.is_square() {
        return Err(Error::Shape("eigenproblem needs a square matrix".into()));
    }
    let err = m.hermiticity_error();
    if err > herm_tol {
        return Err(Error::NotHermitian(err));
    }
    let n = m.rows;
    let blocks = sparsity_blocks(m);
    let mut pairs: Vec<(f64, usize, Vec<C64>)> = Vec::with_capacity(n);
    for block in blocks {
        let k = block.len();
        let mut sub = CMatrix::zeros(k, k);
        for (a, &i) in block.iter().enumerate() {
            for (b, &j) in block.iter().enumerate() {
                sub[(a, b)] = if a == b { r(m[(i, i)].re) } else { 0.5 * (m[(i, j)] + m[(j, i)].conj()) };
            }
        }
        let (vals, vecs) = jacobi(sub);
        for col in 0..k {
            let mut full = vec![ZERO; n];
            for (a, &i) in block.iter().enumerate() {
                full[i] = vecs[(a, col)];
            }
            pairs.push((vals[col], block[0], full));
        }
    }
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal).then(x.1.cmp(&y.1)));
    let mut vectors = CMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (col, (val, _, v)) in pairs.into_iter().enumerate() {
        values.push(val);
        for i in 0..n {
            vectors[(i, col)] = v[i];
        }
    }
    Ok(Eigen { values, vectors })
}

fn sparsity_blocks(m: &CMatrix) -> Vec<Vec<usize>> {
    let n = m.rows;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if m[(i, j)] != ZERO || m[(j, i)] != ZERO {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    groups.into_values().collect()
}

fn off_norm(a: &CMatrix) -> f64 {
    let mut s = 0.0;
    for i in 0..a.rows {
        for j in 0..a.cols {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(mut a: CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.rows;
    let mut v = CMatrix::identity(n);
    if n == 1 {
        return (vec![a[(0, 0)].re], v);
    }
    let threshold = 1e-13 * a.frobenius().max(1.0);
    let mut previous = f64::INFINITY;
    for _sweep in 0..100 {
        let off = off_norm(&a);
        if off <= threshold || off >= previous {
            break;
        }
        previous = off;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag < 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                // rotation acting on columns p, q: V = D R with D = diag(1, conj(phase))
                let vpp = r(cs);
                let vpq = r(sn);
                let vqp = -phase.conj() * sn;
                let vqq = phase.conj() * cs;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * vpp + akq * vqp;
                    a[(k, q)] = akp * vpq + akq * vqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = vpp.conj() * apk + vqp.conj() * aqk;
                    a[(q, k)] = vpq.conj() * apk + vqq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = r(a[(p, p)].re);
                a[(q, q)] = r(a[(q, q)].re);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * vpp + vkq * vqp;
                    v[(k, q)] = vkp * vpq + vkq * vqq;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), v)
}

/// Eigenvalues of a general complex matrix by shifted QR on its Hessenberg
/// form. Only used for small companion matrices.
pub fn general_eigenvalues(m: &CMatrix) -> Vec<C64> {
    assert!(m.is_square());
    let n = m.rows;
    let mut h = hessenberg(m.clone());
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let mut hi = n - 1;
    let mut iter = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if h[(l, l - 1)].norm() <= f64::EPSILON * s.max(1e-300) {
                break;
            }
            l -= 1;
        }
        if l == hi {
            out.push(h[(hi, hi)]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > 1000 {
            // give up on this block: report the diagonal
            for k in (0..=hi).rev() {
                out.push(h[(k, k)]);
            }
            return out;
        }
        let a = h[(hi - 1, hi - 1)];
        let b = h[(hi - 1, hi)];
        let cc = h[(hi, hi - 1)];
        let d = h[(hi, hi)];
        let mut mu = if iter % 11 == 10 {
            d + h[(hi, hi - 1)].norm() * c(0.75, 0.5)
        } else {
            let tr = a + d;
            let det = a * d - b * cc;
            let disc = (tr * tr * 0.25 - det).sqrt();
            let e1 = tr * 0.5 + disc;
            let e2 = tr * 0.5 - disc;
            if (e1 - d).norm() < (e2 - d).norm() {
                e1
            } else {
                e2
            }
        };
        if !mu.is_finite() {
            mu = d;
        }
        for k in l..=hi {
            h[(k, k)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let x = h[(k, k)];
            let y = h[(k + 1, k)];
            let rr = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cg, sg) = if rr < 1e-300 { (ONE, ZERO) } else { (x / rr, y / rr) };
            for j in k..n {
                let u = h[(k, j)];
                let w = h[(k + 1, j)];
                h[(k, j)] = cg.conj() * u + sg.conj() * w;
                h[(k + 1, j)] = -sg * u + cg * w;
            }
            rots.push((cg, sg));
        }
        for (off, &(cg, sg)) in rots.iter().enumerate() {
            let k = l + off;
            let top = (k + 2).min(hi);
            for i in 0..=top {
                let u = h[(i, k)];
                let w = h[(i, k + 1)];
                h[(i, k)] = u * cg + w * sg;
                h[(i, k + 1)] = -u * sg.conj() + w * cg.conj();
            }
        }
        for k in l..=hi {
            h[(k, k)] += mu;
        }
    }
    out.push(h[(0, 0)]);
    out
}

fn hessenberg(mut a: CMatrix) -> CMatrix {
    let n = a.rows;
    for k in 0..n.saturating_sub(2) {
        for i in (k + 2)..n {
            let x = a[(k + 1, k)];
            let y = a[(i, k)];
            if y == ZERO {
                continue;
            }
            let rr = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cg, sg) = (x / rr, y / rr);
            for j in 0..n {
                let u = a[(k + 1, j)];
                let w = a[(i, j)];
                a[(k + 1, j)] = cg.conj() * u + sg.conj() * w;
                a[(i, j)] = -sg * u + cg * w;
            }
            for j in 0..n {
                let u = a[(j, k + 1)];
                let w = a[(j, i)];
                a[(j, k + 1)] = u * cg + w * sg;
                a[(j, i)] = -u * sg.conj() + w * cg.conj();
            }
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sx() -> CMatrix {
        CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])
    }

    #[test]
    fn identity_kron_identity() {
        assert_eq!(tensor_product(&CMatrix::identity(2), &CMatrix::identity(2)), CMatrix::identity(4));
    }

    #[test]
    fn xx_flips_00_to_11() {
        let xx = tensor_product(&sx(), &sx());
        let out = xx.mul_vec(&[ONE, ZERO, ZERO, ZERO]);
        assert_eq!(out, vec![ZERO, ZERO, ZERO, ONE]);
    }

    #[test]
    fn rx_kron_rx_corner() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rx = CMatrix::from_rows(&[vec![r(s), c(0.0, -s)], vec![c(0.0, -s), r(s)]]);
        let m = tensor_product(&rx, &rx);
        assert!((m[(0, 0)] - r(0.5)).norm() < 1e-15);
    }

    #[test]
    fn diagonal_spectrum_sorted() {
        let m = CMatrix::diag(&[r(3.0), r(1.0), r(2.0)]);
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn half_identity_and_pauli() {
        let half = CMatrix::identity(2).scale(r(0.5));
        assert_eq!(hermitian_eigenvalues(&half).unwrap(), vec![0.5, 0.5]);
        let ev = hermitian_eigenvalues(&sx()).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn eigenvectors_diagonalize() {
        let m = CMatrix::from_rows(&[
            vec![r(2.0), c(1.0, -1.0), r(0.5)],
            vec![c(1.0, 1.0), r(-1.0), c(0.0, 2.0)],
            vec![r(0.5), c(0.0, -2.0), r(0.25)],
        ]);
        let e = hermitian_eigen(&m).unwrap();
        assert!(e.vectors.is_unitary(1e-12));
        let d = &(&e.vectors.adjoint() * &m) * &e.vectors;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { r(e.values[i]) } else { ZERO };
                assert!((d[(i, j)] - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn companion_roots() {
        // (z-1)(z-2)(z+i) = z^3 + (-3+i) z^2 + (2-3i) z + 2i
        let comp = CMatrix::from_rows(&[
            vec![c(3.0, -1.0), c(-2.0, 3.0), c(0.0, -2.0)],
            vec![ONE, ZERO, ZERO],
            vec![ZERO, ONE, ZERO],
        ]);
        let mut ev = general_eigenvalues(&comp);
        ev.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let want = [c(0.0, -1.0), r(1.0), r(2.0)];
        for (a, b) in ev.iter().zip(want.iter()) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn partial_transpose_of_singlet() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [ZERO, r(s), r(-s), ZERO];
        let mut rho = CMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                rho[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        let pt = partial_transpose_matrix(&rho, &[2, 2], &[1]).unwrap();
        let ev = hermitian_eigenvalues(&pt).unwrap();
        assert!((ev[3] + 0.5).abs() < 1e-12);
    }
}

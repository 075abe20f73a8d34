//! Four-index tensors, their three flattenings, 2-unitarity and the golden
//! AME(4,6) constants.

use crate::error::{Error, Result};
use crate::linalg::{r, CMatrix, C64, ZERO};
use crate::state::PureState;
use std::f64::consts::PI;
use std::path::Path;

pub const ANALYTIC_TOL: f64 = 1e-9;
pub const TRANSCRIBED_TOL: f64 = 1e-6;

/// T[i][j][k][l], indices 0..d.
#[derive(Clone, Debug, PartialEq)]
pub struct FourIndexTensor {
    d: usize,
    data: Vec<C64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// rows (i,j), columns (k,l)
    IjKl,
    /// rows (i,k), columns (j,l): the reshuffling
    IkJl,
    /// rows (i,l), columns (j,k): partial transpose of the reshuffling
    IlJk,
}

impl Pairing {
    pub const ALL: [Pairing; 3] = [Pairing::IjKl, Pairing::IkJl, Pairing::IlJk];

    pub fn label(self) -> &'static str {
        match self {
            Pairing::IjKl => "ij|kl",
            Pairing::IkJl => "ik|jl",
            Pairing::IlJk => "il|jk",
        }
    }

    // (row, col) in the flattening for tensor index (i,j,k,l)
    fn place(self, d: usize, i: usize, j: usize, k: usize, l: usize) -> (usize, usize) {
        match self {
            Pairing::IjKl => (d * i + j, d * k + l),
            Pairing::IkJl => (d * i + k, d * j + l),
            Pairing::IlJk => (d * i + l, d * j + k),
        }
    }
}

impl FourIndexTensor {
    pub fn zeros(d: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::Invalid("local dimension must be positive".into()));
        }
        Ok(FourIndexTensor { d, data: vec![ZERO; d.pow(4)] })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    fn offset(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.d + j) * self.d + k) * self.d + l
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.data[self.offset(i, j, k, l)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: C64) -> Result<()> {
        if [i, j, k, l].iter().any(|&x| x >= self.d) {
            return Err(Error::Shape(format!("index ({i},{j},{k},{l}) outside d = {}", self.d)));
        }
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Invalid("non-finite tensor entry".into()));
        }
        let o = self.offset(i, j, k, l);
        self.data[o] = v;
        Ok(())
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|z| z.norm() > 0.0).count()
    }

    /// U with U[(d i + j), (d k + l)] = T_ijkl.
    pub fn from_matrix(u: &CMatrix, d: usize) -> Result<Self> {
        if u.rows() != d * d || u.cols() != d * d {
            return Err(Error::Shape(format!("expected a {0}x{0} matrix", d * d)));
        }
        let mut t = Self::zeros(d)?;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        t.set(i, j, k, l, u[(d * i + j, d * k + l)])?;
                    }
                }
            }
        }
        Ok(t)
    }

    /// T_ijkl = d * amplitude of |ijkl>.
    pub fn from_state(psi: &PureState) -> Result<Self> {
        let dims = psi.dims();
        if dims.len() != 4 || dims.iter().any(|&x| x != dims[0]) {
            return Err(Error::Shape("a four-index tensor needs four sites of equal dimension".into()));
        }
        let d = dims[0];
        let mut t = Self::zeros(d)?;
        for (idx, &a) in psi.terms() {
            t.set(idx[0], idx[1], idx[2], idx[3], a * d as f64)?;
        }
        Ok(t)
    }

    /// The state sum T_ijkl / d |ijkl>.
    pub fn to_state(&self) -> Result<PureState> {
        let d = self.d;
        let mut psi = PureState::zero(&[d; 4])?;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let v = self.get(i, j, k, l);
                        if v != ZERO {
                            psi.add(&[i, j, k, l], v / d as f64)?;
                        }
                    }
                }
            }
        }
        Ok(psi)
    }

    /// Permutation tensor of a pair of orthogonal Latin squares: T_ijkl = 1
    /// iff (k, l) is the entry at cell (i, j).
    pub fn from_latin_squares(l1: &[Vec<usize>], l2: &[Vec<usize>]) -> Result<Self> {
        let d = l1.len();
        if l2.len() != d || l1.iter().chain(l2).any(|row| row.len() != d) {
            return Err(Error::Shape("Latin squares must be d x d".into()));
        }
        let mut t = Self::zeros(d)?;
        for i in 0..d {
            for j in 0..d {
                t.set(i, j, l1[i][j], l2[i][j], r(1.0))?;
            }
        }
        Ok(t)
    }

    /// Reads `i,j,k,l,coeff,omega_power` lines with 1-based indices; coeff is
    /// a, b, c or a real literal, omega = exp(i pi/10). `#` starts a comment.
    pub fn from_csv(text: &str, d: usize) -> Result<Self> {
        let g = golden_constants();
        let mut t = Self::zeros(d)?;
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: expected i,j,k,l,coeff,omega_power", n + 1));
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 6 {
                return Err(bad());
            }
            let mut ix = [0usize; 4];
            for (slot, s) in ix.iter_mut().zip(&f[..4]) {
                let v: usize = s.parse().map_err(|_| bad())?;
                if v == 0 || v > d {
                    return Err(Error::Parse(format!("line {}: index {v} outside 1..{d}", n + 1)));
                }
                *slot = v - 1;
            }
            let coeff = match f[4] {
                "a" => g.a,
                "b" => g.b,
                "c" => g.c,
                lit => lit.parse::<f64>().map_err(|_| bad())?,
            };
            let p: i64 = f[5].parse().map_err(|_| bad())?;
            if t.get(ix[0], ix[1], ix[2], ix[3]) != ZERO {
                return Err(Error::Parse(format!("line {}: repeated entry", n + 1)));
            }
            t.set(ix[0], ix[1], ix[2], ix[3], omega_pow(p) * coeff)?;
        }
        Ok(t)
    }

    pub fn from_csv_file(path: impl AsRef<Path>, d: usize) -> Result<Self> {
        Self::from_csv(&std::fs::read_to_string(path)?, d)
    }
}

/// exp(i pi p / 10).
pub fn omega_pow(p: i64) -> C64 {
    C64::from_polar(1.0, PI * p.rem_euclid(20) as f64 / 10.0)
}

pub fn flatten(t: &FourIndexTensor, pairing: Pairing) -> CMatrix {
    let d = t.d;
    let mut m = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let (row, col) = pairing.place(d, i, j, k, l);
                    m[(row, col)] = t.get(i, j, k, l);
                }
            }
        }
    }
    m
}

/// Reshuffling of a d^2 x d^2 matrix: R[(i k), (j l)] = U[(i j), (k l)].
pub fn reshuffle(u: &CMatrix, d: usize) -> Result<CMatrix> {
    Ok(flatten(&FourIndexTensor::from_matrix(u, d)?, Pairing::IkJl))
}

pub fn is_unitary(m: &CMatrix, tol: f64) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::Shape("unitarity needs a square matrix".into()));
    }
    Ok(m.is_unitary(tol))
}

fn square_side(n: usize) -> Option<usize> {
    let d = (n as f64).sqrt().round() as usize;
    (d * d == n).then_some(d)
}

/// U, its reshuffling and the partial transpose of the reshuffling are all
/// unitary.
pub fn is_2unitary(u: &CMatrix, tol: f64) -> Result<bool> {
    if !u.is_square() {
        return Err(Error::Shape("2-unitarity needs a square matrix".into()));
    }
    let d = square_side(u.rows()).ok_or_else(|| Error::Shape(format!("order {} is not a square", u.rows())))?;
    is_perfect(&FourIndexTensor::from_matrix(u, d)?, tol)
}

/// Unitarity of all three flattenings.
pub fn is_perfect(t: &FourIndexTensor, tol: f64) -> Result<bool> {
    Ok(flattening_errors(t).iter().all(|&(_, e)| e <= tol))
}

/// Max-norm deviation of M^dagger M from the identity for every pairing.
pub fn flattening_errors(t: &FourIndexTensor) -> Vec<(Pairing, f64)> {
    Pairing::ALL.iter().map(|&p| (p, flatten(t, p).unitarity_error())).collect()
}

/// Amplitudes of psi equal T/d entrywise.
pub fn verify_tensor_state_consistency(t: &FourIndexTensor, psi: &PureState, tol: f64) -> Result<bool> {
    if psi.dims() != [t.d; 4] {
        return Err(Error::Shape(format!("tensor of dimension {} against state dims {:?}", t.d, psi.dims())));
    }
    let from_psi = FourIndexTensor::from_state(psi)?;
    Ok(t.data.iter().zip(&from_psi.data).all(|(a, b)| (a - b).norm() <= tol * t.d as f64))
}

/// F_jk = exp(2 pi i jk/d)/sqrt d.
pub fn fourier(d: usize) -> CMatrix {
    let mut f = CMatrix::zeros(d, d);
    for j in 0..d {
        for k in 0..d {
            f[(j, k)] = C64::from_polar(1.0 / (d as f64).sqrt(), 2.0 * PI * ((j * k) % d) as f64 / d as f64);
        }
    }
    f
}

/// Unitary with every entry a q-th root of unity divided by sqrt d.
pub fn is_butson(m: &CMatrix, q: usize, tol: f64) -> bool {
    if !m.is_square() || q == 0 || !m.is_unitary(tol) {
        return false;
    }
    let s = (m.rows() as f64).sqrt();
    m.data().iter().all(|&z| {
        let w = z * s;
        (w.norm() - 1.0).abs() <= tol && {
            let k = w.arg() * q as f64 / (2.0 * PI);
            (k - k.round()).abs() * 2.0 * PI / q as f64 <= tol
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Golden {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub omega: C64,
}

pub fn golden_constants() -> Golden {
    let s5 = 5f64.sqrt();
    Golden {
        a: (5.0 + s5).powf(-0.5),
        b: ((5.0 + s5) / 20.0).sqrt(),
        c: 0.5f64.sqrt(),
        omega: omega_pow(1),
    }
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub label: &'static str,
    pub value: C64,
}

/// The nine row-orthogonality relations of the golden AME(4,6) blocks,
/// evaluated exactly as written.
pub fn verify_orthogonality_relations() -> Vec<Relation> {
    let Golden { a, b, c, .. } = golden_constants();
    let w = omega_pow;
    let rel = |label, value| Relation { label, value };
    vec![
        rel("bc(1-1)", r(b * c) * (r(1.0) - r(1.0))),
        rel("a^2(w^8+w^-8)+b^2(w^4+w^-4)", (w(8) + w(-8)) * (a * a) + (w(4) + w(-4)) * (b * b)),
        rel("ab(1+w^2+w^-8-1)", (r(1.0) + w(2) + w(-8) - r(1.0)) * (a * b)),
        rel("ab(w^-2+w^2+w^-8+w^8)", (w(-2) + w(2) + w(-8) + w(8)) * (a * b)),
        rel("a^2 w^4+ab(w^10+w^-4)+b^2 w^-4", w(4) * (a * a) + (w(10) + w(-4)) * (a * b) + w(-4) * (b * b)),
        rel("a^2 w^-3+ab(w^5+w^3)+b^2 w^-7", w(-3) * (a * a) + (w(5) + w(3)) * (a * b) + w(-7) * (b * b)),
        rel("ab(w^-4+w^-6)+bc w^5", (w(-4) + w(-6)) * (a * b) + w(5) * (b * c)),
        rel("ab(w^-8+w^-2)+ac w^5", (w(-8) + w(-2)) * (a * b) + w(5) * (a * c)),
        rel("a^2+b^2 w^4+bc w^-7", r(a * a) + w(4) * (b * b) + w(-7) * (b * c)),
    ]
}

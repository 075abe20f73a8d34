//! Finite rings and orthogonal arrays.
//!
//! Ring elements are integers `0..order`. A Galois element
//! `a_{n-1} x^{n-1} + ... + a_0` is encoded as `sum a_k p^k`; a direct-sum
//! element `(a_1, ..., a_m)` is encoded in mixed radix with the first
//! component most significant, so over Z_3 + Z_3 the pair `(a, b)` is `3a + b`.

use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    Cyclic(usize),
    /// Polynomial coefficients lowest degree first, monic of degree `n`.
    Galois { p: usize, n: usize, poly: Vec<usize> },
    DirectSum(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct FiniteRing {
    kind: RingKind,
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

const MAX_ORDER: usize = 1024;

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

/// `Some((p, n))` when `q = p^n`.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|k| q % k == 0)?;
    let mut rest = q;
    let mut n = 0;
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

impl FiniteRing {
    pub fn cyclic(d: usize) -> Result<Self> {
        if d < 2 || d > MAX_ORDER {
            return Err(Error::UnsupportedOrder(d));
        }
        let add = (0..d * d).map(|k| (k / d + k % d) % d).collect();
        let mul = (0..d * d).map(|k| (k / d) * (k % d) % d).collect();
        Ok(FiniteRing { kind: RingKind::Cyclic(d), order: d, add, mul })
    }

    /// GF(p^n) as Z_p[x]/(poly). `poly` lists the coefficients of a monic
    /// degree-`n` polynomial, lowest first; the leading 1 may be omitted.
    pub fn galois(p: usize, n: usize, poly: &[usize]) -> Result<Self> {
        if !is_prime(p) || n == 0 {
            return Err(Error::NotPrimePower(p.pow(n.max(1) as u32)));
        }
        let order = p.checked_pow(n as u32).filter(|&q| q <= MAX_ORDER).ok_or(Error::UnsupportedOrder(p))?;
        let mut poly = poly.to_vec();
        if poly.len() == n + 1 {
            if poly[n] % p != 1 {
                return Err(Error::Invalid("irreducible polynomial must be monic".into()));
            }
            poly.pop();
        }
        if poly.len() != n || poly.iter().any(|&c| c >= p) {
            return Err(Error::Invalid(format!("need {n} coefficients in 0..{p} below the leading term")));
        }
        let to_vec = |mut e: usize| -> Vec<usize> {
            (0..n)
                .map(|_| {
                    let d = e % p;
                    e /= p;
                    d
                })
                .collect()
        };
        let from_vec = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for a in 0..order {
            let va = to_vec(a);
            for b in 0..order {
                let vb = to_vec(b);
                let s: Vec<usize> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
                add[a * order + b] = from_vec(&s);
                // schoolbook product then reduce x^n = -(poly)
                let mut prod = vec![0usize; 2 * n];
                for (i, &x) in va.iter().enumerate() {
                    for (j, &y) in vb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (n..2 * n).rev() {
                    let lead = prod[deg];
                    if lead == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for k in 0..n {
                        let sub = lead * poly[k] % p;
                        prod[deg - n + k] = (prod[deg - n + k] + p - sub) % p;
                    }
                }
                mul[a * order + b] = from_vec(&prod[..n]);
            }
        }
        let ring = FiniteRing { kind: RingKind::Galois { p, n, poly }, order, add, mul };
        if ring.has_zero_divisors() {
            return Err(Error::Reducible(p));
        }
        Ok(ring)
    }

    /// GF(q) with the default modulus: x^2+x+1 for q = 4, x^2+1 for q = 9,
    /// otherwise the first irreducible monic polynomial in lexicographic
    /// order of its lower coefficients.
    pub fn galois_default(q: usize) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if n == 1 {
            return Self::galois(p, 1, &[0]);
        }
        match q {
            4 => return Self::galois(2, 2, &[1, 1]),
            9 => return Self::galois(3, 2, &[1, 0]),
            _ => {}
        }
        let count = p.pow(n as u32);
        for code in 1..count {
            let poly: Vec<usize> = (0..n).map(|k| code / p.pow(k as u32) % p).collect();
            if poly[0] == 0 {
                continue;
            }
            if let Ok(r) = Self::galois(p, n, &poly) {
                return Ok(r);
            }
        }
        Err(Error::UnsupportedOrder(q))
    }

    pub fn direct_sum(orders: &[usize]) -> Result<Self> {
        if orders.is_empty() || orders.iter().any(|&d| d < 2) {
            return Err(Error::Invalid("direct sum needs component orders >= 2".into()));
        }
        let order: usize = orders.iter().product();
        if order > MAX_ORDER {
            return Err(Error::UnsupportedOrder(order));
        }
        let split = |mut e: usize| -> Vec<usize> {
            let mut v = vec![0; orders.len()];
            for (slot, &d) in v.iter_mut().zip(orders).rev() {
                *slot = e % d;
                e /= d;
            }
            v
        };
        let join = |v: &[usize]| v.iter().zip(orders).fold(0, |acc, (&x, &d)| acc * d + x);
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for a in 0..order {
            let va = split(a);
            for b in 0..order {
                let vb = split(b);
                let s: Vec<usize> = va.iter().zip(&vb).zip(orders).map(|((x, y), d)| (x + y) % d).collect();
                let m: Vec<usize> = va.iter().zip(&vb).zip(orders).map(|((x, y), d)| x * y % d).collect();
                add[a * order + b] = join(&s);
                mul[a * order + b] = join(&m);
            }
        }
        Ok(FiniteRing { kind: RingKind::DirectSum(orders.to_vec()), order, add, mul })
    }

    /// Parses `Z9`, `GF9`, `GF9:1,0` (lower coefficients), `Z3+Z3`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim();
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad ring `{spec}`")));
        if s.contains('+') {
            let orders = s
                .split('+')
                .map(|part| num(part.trim().trim_start_matches(['Z', 'z'])))
                .collect::<Result<Vec<_>>>()?;
            return Self::direct_sum(&orders);
        }
        if let Some(rest) = s.strip_prefix("GF").or_else(|| s.strip_prefix("gf")) {
            let (q, poly) = match rest.split_once(':') {
                Some((q, p)) => (num(q)?, Some(p.split(',').map(num).collect::<Result<Vec<_>>>()?)),
                None => (num(rest)?, None),
            };
            return match poly {
                None => Self::galois_default(q),
                Some(poly) => {
                    let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
                    Self::galois(p, n, &poly)
                }
            };
        }
        if let Some(rest) = s.strip_prefix('Z').or_else(|| s.strip_prefix('z')) {
            return Self::cyclic(num(rest)?);
        }
        Err(Error::Parse(format!("unknown ring `{spec}`")))
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.order).find(|&b| self.add(a, b) == 0).expect("additive inverse exists")
    }

    /// Multiplicative identity (for direct sums the all-ones tuple).
    pub fn one(&self) -> usize {
        (0..self.order)
            .find(|&u| (0..self.order).all(|a| self.mul(a, u) == a))
            .expect("ring without identity")
    }

    /// The integer n mapped to n times the identity.
    pub fn from_integer(&self, n: usize) -> usize {
        let one = self.one();
        (0..n % self.characteristic()).fold(0, |acc, _| self.add(acc, one))
    }

    /// Additive order of the identity.
    pub fn characteristic(&self) -> usize {
        let one = self.one();
        let mut acc = one;
        let mut k = 1;
        while acc != 0 {
            acc = self.add(acc, one);
            k += 1;
        }
        k
    }

    pub fn is_field(&self) -> bool {
        !self.has_zero_divisors()
    }

    fn has_zero_divisors(&self) -> bool {
        (1..self.order).any(|a| (1..self.order).any(|b| self.mul(a, b) == 0))
    }

    /// Exhaustive check of the commutative ring axioms.
    pub fn check_axioms(&self) -> bool {
        let q = self.order;
        let e = 0..q;
        for a in e.clone() {
            if self.add(a, 0) != a || self.mul(a, self.one()) != a {
                return false;
            }
            for b in e.clone() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
                for cc in e.clone() {
                    if self.add(self.add(a, b), cc) != self.add(a, self.add(b, cc))
                        || self.mul(self.mul(a, b), cc) != self.mul(a, self.mul(b, cc))
                        || self.mul(a, self.add(b, cc)) != self.add(self.mul(a, b), self.mul(a, cc))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    pub ring: FiniteRing,
    pub rows: Vec<Vec<usize>>,
}

impl GeneratorMatrix {
    pub fn new(ring: FiniteRing, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        if rows.is_empty() || n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("generator rows must be nonempty and equally long".into()));
        }
        if rows.iter().flatten().any(|&x| x >= ring.order()) {
            return Err(Error::Invalid("generator entry outside the ring".into()));
        }
        Ok(GeneratorMatrix { ring, rows })
    }

    /// Standard form `[Id_s | a]`; entries of `a` are integers, read as
    /// multiples of the ring identity.
    pub fn standard(ring: FiniteRing, a: &[Vec<usize>]) -> Result<Self> {
        let s = a.len();
        let one = ring.one();
        let rows = a
            .iter()
            .enumerate()
            .map(|(i, tail)| {
                let mut row = vec![0; s];
                row[i] = one;
                row.extend(tail.iter().map(|&x| ring.from_integer(x)));
                row
            })
            .collect();
        Self::new(ring, rows)
    }
}

/// A simple orthogonal array: distinct rows over the alphabet `0..d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalArray {
    d: usize,
    n_cols: usize,
    rows: Vec<Vec<usize>>,
}

impl OrthogonalArray {
    pub fn new(d: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n_cols = rows.first().map_or(0, |r| r.len());
        if d < 2 || rows.is_empty() || n_cols == 0 || rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Shape("array needs equal-length nonempty rows and d >= 2".into()));
        }
        if rows.iter().flatten().any(|&x| x >= d) {
            return Err(Error::Invalid(format!("entry outside alphabet 0..{d}")));
        }
        let mut seen = HashSet::new();
        if !rows.iter().all(|r| seen.insert(r.clone())) {
            return Err(Error::DuplicateRows);
        }
        Ok(OrthogonalArray { d, n_cols, rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn alphabet(&self) -> usize {
        self.d
    }

    pub fn project(&self, cols: &[usize]) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect()
    }

    fn balanced(&self, cols: &[usize]) -> bool {
        let k = cols.len() as u32;
        let Some(cells) = self.d.checked_pow(k) else { return false };
        if self.rows.len() % cells != 0 {
            return false;
        }
        let want = self.rows.len() / cells;
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for r in self.project(cols) {
            *counts.entry(r).or_default() += 1;
        }
        counts.len() == cells && counts.values().all(|&c| c == want)
    }

    /// Largest k for which every k-column projection is balanced.
    pub fn strength(&self) -> usize {
        let mut k = 0;
        for size in 1..=self.n_cols {
            if !combinations(self.n_cols, size).iter().all(|cols| self.balanced(cols)) {
                break;
            }
            k = size;
        }
        k
    }

    pub fn index(&self, k: usize) -> Result<usize> {
        let strength = self.strength();
        if k > strength {
            return Err(Error::StrengthExceeded { k, strength });
        }
        Ok(self.rows.len() / self.d.pow(k as u32))
    }

    /// Every projection onto N-k columns has pairwise distinct rows.
    pub fn irredundant(&self, k: usize) -> Result<bool> {
        let strength = self.strength();
        if k > strength {
            return Err(Error::StrengthExceeded { k, strength });
        }
        if k >= self.n_cols {
            return Ok(false);
        }
        Ok(combinations(self.n_cols, self.n_cols - k).iter().all(|cols| {
            let mut seen = HashSet::new();
            self.project(cols).into_iter().all(|r| seen.insert(r))
        }))
    }

    pub fn with_columns(&self, cols: &[usize]) -> Result<Self> {
        Self::new(self.d, self.project(cols))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# OA {} {} {}\n", self.rows.len(), self.n_cols, self.d);
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Reads the `# OA r N d` format. Rows may also be written without
    /// spaces when d <= 10 (`0121`).
    pub fn from_text(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                let parts: Vec<&str> = h.split_whitespace().collect();
                if parts.first() == Some(&"OA") && parts.len() == 4 {
                    let p = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad header `{line}`")));
                    header = Some((p(parts[1])?, p(parts[2])?, p(parts[3])?));
                }
                continue;
            }
            let row: Vec<usize> = if line.contains(char::is_whitespace) {
                line.split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry `{t}`"))))
                    .collect::<Result<_>>()?
            } else {
                line.chars()
                    .map(|ch| ch.to_digit(10).map(|x| x as usize).ok_or(Error::Parse(format!("bad row `{line}`"))))
                    .collect::<Result<_>>()?
            };
            rows.push(row);
        }
        let (r, n, d) = header.ok_or(Error::Parse("missing `# OA r N d` header".into()))?;
        let oa = Self::new(d, rows)?;
        if oa.n_rows() != r || oa.n_cols != n {
            return Err(Error::Shape(format!("header says {r}x{n}, found {}x{}", oa.n_rows(), oa.n_cols)));
        }
        Ok(oa)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

/// All k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Rows `v G` for all coefficient vectors `v`, lexicographic in `v`.
pub fn oa_from_generator(g: &GeneratorMatrix) -> Result<OrthogonalArray> {
    let q = g.ring.order();
    let s = g.rows.len();
    let n = g.rows[0].len();
    let total = q.checked_pow(s as u32).filter(|&t| t <= 1 << 20).ok_or(Error::UnsupportedOrder(q))?;
    let mut rows = Vec::with_capacity(total);
    for code in 0..total {
        let mut v = vec![0; s];
        let mut e = code;
        for slot in v.iter_mut().rev() {
            *slot = e % q;
            e /= q;
        }
        let row: Vec<usize> = (0..n)
            .map(|j| (0..s).fold(0, |acc, i| g.ring.add(acc, g.ring.mul(v[i], g.rows[i][j]))))
            .collect();
        rows.push(row);
    }
    OrthogonalArray::new(q, rows)
}

/// Bush construction: rows indexed by polynomials of degree < k over GF(d)
/// (leading coefficient most significant in the row order); column j < d
/// holds the value at the j-th field element, the last column holds the
/// coefficient of x^{k-1}.
pub fn bush_oa(d: usize, k: usize) -> Result<OrthogonalArray> {
    let field = FiniteRing::galois_default(d)?;
    if k == 0 || k > d {
        return Err(Error::Invalid(format!("Bush construction needs 1 <= k <= d, got k = {k}")));
    }
    let total = d.pow(k as u32);
    let mut rows = Vec::with_capacity(total);
    for code in 0..total {
        // coeffs[0] = c_{k-1}, ..., coeffs[k-1] = c_0
        let mut coeffs = vec![0; k];
        let mut e = code;
        for slot in coeffs.iter_mut().rev() {
            *slot = e % d;
            e /= d;
        }
        let mut row: Vec<usize> = (0..d)
            .map(|alpha| coeffs.iter().fold(0, |acc, &cf| field.add(field.mul(acc, alpha), cf)))
            .collect();
        row.push(coeffs[0]);
        rows.push(row);
    }
    OrthogonalArray::new(d, rows)
}

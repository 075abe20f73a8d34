//! Permutations of sites, permutation groups and their action on states.
//!
//! A permutation is stored by its image list on `0..n`. Acting on a state,
//! the content of site `s` moves to site `sigma(s)`.

use crate::error::{Error, Result};
use crate::linalg::{C64, ONE};
use crate::state::PureState;
use std::collections::{BTreeSet, VecDeque};

pub const GROUP_CAP: usize = 3_628_800;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// From one-line notation on 1..n, e.g. "2 3 1".
    pub fn parse(text: &str) -> Result<Self> {
        let images = text
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(Error::InvalidPermutation(format!("bad image `{t}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, s: usize) -> usize {
        self.0[s]
    }

    /// (self ∘ other)(s) = self(other(s))
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (s, &t) in self.0.iter().enumerate() {
            inv[t] = s;
        }
        Permutation(inv)
    }

    pub fn to_one_line(&self) -> String {
        self.0.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// All permutations of 0..n in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    n: usize,
    elements: BTreeSet<Permutation>,
}

impl PermGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn is_closed(&self) -> bool {
        self.contains(&Permutation::identity(self.n))
            && self.elements.iter().all(|a| self.contains(&a.inverse()))
            && self.elements.iter().all(|a| self.elements.iter().all(|b| self.contains(&a.compose(b))))
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n > 10 {
            return Err(Error::GroupTooLarge(GROUP_CAP));
        }
        Ok(PermGroup { n, elements: all_permutations(n).into_iter().collect() })
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let s = Self::symmetric(n)?;
        Ok(PermGroup { n, elements: s.elements.into_iter().filter(|p| parity(p) == 0).collect() })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let shift = Permutation((0..n).map(|s| (s + 1) % n).collect());
        subgroup_generate(n, &[shift])
    }

    /// Symmetries of the n-gon, order 2n (n >= 3).
    pub fn dihedral(n: usize) -> Result<Self> {
        let shift = Permutation((0..n).map(|s| (s + 1) % n).collect());
        let flip = Permutation((0..n).map(|s| (n - s) % n).collect());
        subgroup_generate(n, &[shift, flip])
    }

    pub fn trivial(n: usize) -> Self {
        PermGroup { n, elements: [Permutation::identity(n)].into_iter().collect() }
    }
}

fn parity(p: &Permutation) -> usize {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut transpositions = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p.apply(x);
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2
}

pub fn subgroup_generate(n: usize, generators: &[Permutation]) -> Result<PermGroup> {
    for g in generators {
        if g.len() != n {
            return Err(Error::InvalidPermutation(format!("generator {g:?} does not act on {n} points")));
        }
    }
    let id = Permutation::identity(n);
    let mut elements: BTreeSet<Permutation> = [id.clone()].into_iter().collect();
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = g.compose(&p);
            if elements.insert(q.clone()) {
                if elements.len() > GROUP_CAP {
                    return Err(Error::GroupTooLarge(GROUP_CAP));
                }
                queue.push_back(q);
            }
        }
    }
    Ok(PermGroup { n, elements })
}

pub fn permute_state(psi: &PureState, sigma: &Permutation) -> Result<PureState> {
    let n = psi.n_sites();
    if sigma.len() != n {
        return Err(Error::Shape(format!("permutation on {} points for a {n}-site state", sigma.len())));
    }
    let mut dims = vec![0; n];
    for s in 0..n {
        dims[sigma.apply(s)] = psi.dims()[s];
    }
    let terms = psi.terms().iter().map(|(idx, &a)| {
        let mut out = vec![0; n];
        for s in 0..n {
            out[sigma.apply(s)] = idx[s];
        }
        (out, a)
    });
    let mut out = PureState::from_terms(&dims, terms)?;
    if psi.is_normalized() {
        out = out.normalize()?;
    }
    Ok(out)
}

fn fixes(psi: &PureState, sigma: &Permutation, projective: bool, tol: f64) -> bool {
    let n = psi.n_sites();
    if (0..n).any(|s| psi.dims()[sigma.apply(s)] != psi.dims()[s]) {
        return false;
    }
    let mut phase: Option<C64> = if projective { None } else { Some(ONE) };
    let mut moved = vec![0; n];
    for (idx, &a) in psi.terms() {
        for s in 0..n {
            moved[sigma.apply(s)] = idx[s];
        }
        // sigma(psi) carries `a` at `moved`; it must equal phase * psi(moved)
        let b = psi.amplitude(&moved);
        match phase {
            None => {
                if b.norm() < tol {
                    return false;
                }
                phase = Some(a / b);
            }
            Some(ph) => {
                if (a - ph * b).norm() > tol {
                    return false;
                }
            }
        }
    }
    match phase {
        Some(ph) => (ph.norm() - 1.0).abs() <= tol,
        None => true,
    }
}

/// Stabilizer of `psi` in S_N, exact or up to a global phase.
pub fn symmetry_group(psi: &PureState, projective: bool) -> Result<PermGroup> {
    symmetry_group_tol(psi, projective, 1e-9)
}

pub fn symmetry_group_tol(psi: &PureState, projective: bool, tol: f64) -> Result<PermGroup> {
    let n = psi.n_sites();
    if n > 8 {
        return Err(Error::GroupTooLarge(40320));
    }
    let psi = psi.clone().normalize()?;
    let perms = all_permutations(n);
    #[cfg(feature = "parallel")]
    let elements: BTreeSet<Permutation> = {
        use rayon::prelude::*;
        perms.into_par_iter().filter(|p| fixes(&psi, p, projective, tol)).collect::<Vec<_>>().into_iter().collect()
    };
    #[cfg(not(feature = "parallel"))]
    let elements: BTreeSet<Permutation> = perms.into_iter().filter(|p| fixes(&psi, p, projective, tol)).collect();
    Ok(PermGroup { n, elements })
}

/// Superposition over the orbit of |1^k 0^(n-k)> under `h`, with
/// multiplicities, normalized.
pub fn dicke_like(n: usize, k: usize, h: &PermGroup) -> Result<PureState> {
    if k > n || h.n() != n {
        return Err(Error::Invalid(format!("need 0 <= k <= n = {n} and a group on {n} points")));
    }
    let mut psi = PureState::qubits(n);
    for sigma in h.elements() {
        let mut idx = vec![0; n];
        for s in 0..k {
            idx[sigma.apply(s)] = 1;
        }
        psi.add(&idx, ONE)?;
    }
    psi.normalize()
}

/// (1/sqrt|H|) sum over H of |sigma(0), ..., sigma(N-1)>, local dimension N.
pub fn canonical_h_symmetric(h: &PermGroup) -> Result<PureState> {
    let n = h.n();
    if n < 2 {
        return Err(Error::Invalid("need at least two sites".into()));
    }
    let mut psi = PureState::zero(&vec![n; n])?;
    for sigma in h.elements() {
        psi.add(sigma.images(), ONE)?;
    }
    psi.normalize()
}

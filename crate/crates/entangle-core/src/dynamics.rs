//! Excitation-preserving Hamiltonians and a state-preparation circuit for
//! excitation states.
//!
//! Occupation convention: |1> is an excitation, sigma_+ = |1><0| creates it
//! and sigma_- annihilates it. Restricted matrices use the basis of
//! excitation sets in lexicographic order.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::{digits, hermitian_eigen, linear_index, CMatrix, C64, ONE, ZERO};
use crate::state::PureState;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

pub const UNITARY_TOL: f64 = 1e-10;
/// Largest qubit count for which full-space operators are built.
pub const FULL_SPACE_MAX: usize = 10;

/// All k-subsets of 0..n in lexicographic order.
pub fn excitation_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// J_+ J_- for a k-uniform hypergraph, restricted to k excitations.
/// The operator is the Gram matrix of the edge indicator vector: entry
/// (S, T) is 1 exactly when both S and T are edges.
pub fn hamiltonian_exc(g: &Hypergraph) -> Result<CMatrix> {
    let k = g.uniformity().ok_or(Error::NonUniform)?;
    let basis = excitation_basis(g.n_vertices(), k);
    let pos: HashMap<&Vec<usize>, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut h = CMatrix::zeros(basis.len(), basis.len());
    let edge_rows: Vec<usize> = g
        .edges()
        .iter()
        .map(|e| {
            let mut s = e.clone();
            s.sort_unstable();
            pos[&s]
        })
        .collect();
    for &a in &edge_rows {
        for &b in &edge_rows {
            h[(a, b)] += ONE;
        }
    }
    Ok(h)
}

pub fn hamiltonian_2exc(g: &Hypergraph) -> Result<CMatrix> {
    if !g.is_graph() {
        return Err(Error::Invalid("two-excitation Hamiltonian needs a graph".into()));
    }
    hamiltonian_exc(g)
}

/// Conditional hopping sum_v sum_{v ~ v' ~ v''} sigma_+^(v'') n^(v') sigma_-^(v)
/// on the two-excitation sector. The v = v'' terms give n_v n_v'.
/// No regularity is required to build it; the eigenvalue statements need it.
pub fn hamiltonian_3body(g: &Hypergraph) -> Result<CMatrix> {
    if !g.is_graph() {
        return Err(Error::Invalid("three-body Hamiltonian needs a graph".into()));
    }
    let n = g.n_vertices();
    let basis = excitation_basis(n, 2);
    let pos: HashMap<(usize, usize), usize> = basis.iter().enumerate().map(|(i, s)| ((s[0], s[1]), i)).collect();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut h = CMatrix::zeros(basis.len(), basis.len());
    for (col, s) in basis.iter().enumerate() {
        for (v, vp) in [(s[0], s[1]), (s[1], s[0])] {
            // v hops, vp is the occupied control
            if !nbrs[vp].contains(&v) {
                continue;
            }
            for &vpp in &nbrs[vp] {
                if vpp == v {
                    h[(col, col)] += ONE;
                } else {
                    h[(pos[&key(vpp, vp)], col)] += ONE;
                }
            }
        }
    }
    Ok(h)
}

/// Full 2^N matrix of J_+ J_- for N <= FULL_SPACE_MAX.
pub fn full_space_hamiltonian(g: &Hypergraph) -> Result<CMatrix> {
    let n = g.n_vertices();
    if n > FULL_SPACE_MAX {
        return Err(Error::Invalid(format!("full-space operator limited to {FULL_SPACE_MAX} qubits")));
    }
    let dims = vec![2; n];
    let dim = 1usize << n;
    let jminus = |idx: &[usize]| -> Vec<Vec<usize>> {
        g.edges()
            .iter()
            .filter(|e| e.iter().all(|&v| idx[v] == 1))
            .map(|e| {
                let mut out = idx.to_vec();
                e.iter().for_each(|&v| out[v] = 0);
                out
            })
            .collect()
    };
    let jplus = |idx: &[usize]| -> Vec<Vec<usize>> {
        g.edges()
            .iter()
            .filter(|e| e.iter().all(|&v| idx[v] == 0))
            .map(|e| {
                let mut out = idx.to_vec();
                e.iter().for_each(|&v| out[v] = 1);
                out
            })
            .collect()
    };
    let mut h = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        for mid in jminus(&digits(col, &dims)) {
            for row in jplus(&mid) {
                h[(linear_index(&row, &dims), col)] += ONE;
            }
        }
    }
    Ok(h)
}

/// Total excitation number on N qubits.
pub fn number_operator(n: usize) -> CMatrix {
    let dims = vec![2; n];
    let vals: Vec<C64> = (0..1usize << n).map(|i| C64::new(digits(i, &dims).iter().sum::<usize>() as f64, 0.0)).collect();
    CMatrix::diag(&vals)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub top: f64,
    pub second: Option<f64>,
    pub gap: f64,
    /// |<G|top eigenvector>|^2 with the excitation state G
    pub overlap: f64,
}

/// Top eigenpair of a restricted Hamiltonian against the excitation state.
pub fn spectrum_report(h: &CMatrix, g: &Hypergraph) -> Result<SpectrumReport> {
    let k = g.uniformity().ok_or(Error::NonUniform)?;
    let basis = excitation_basis(g.n_vertices(), k);
    if basis.len() != h.rows() {
        return Err(Error::Shape("Hamiltonian does not match the excitation sector".into()));
    }
    let eig = hermitian_eigen(h)?;
    let top = eig.values[0];
    let second = eig.values.get(1).copied();
    let v = eig.vectors.column(0);
    let norm = (g.n_edges() as f64).sqrt();
    let pos: HashMap<&Vec<usize>, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut amp = ZERO;
    for e in g.edges() {
        let mut s = e.clone();
        s.sort_unstable();
        amp += v[pos[&s]] / norm;
    }
    Ok(SpectrumReport { top, second, gap: second.map_or(f64::INFINITY, |s| top - s), overlap: amp.norm_sqr() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateLabel {
    U1,
    U2,
    U3,
    U4,
}

impl fmt::Display for GateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug)]
pub struct Gate {
    pub label: GateLabel,
    /// 0-based qubits; the first one is the most significant in `unitary`
    pub sites: Vec<usize>,
    pub unitary: CMatrix,
}

#[derive(Clone, Debug)]
pub struct GateList {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
}

#[derive(Serialize, Deserialize)]
struct GateJson {
    label: GateLabel,
    sites: Vec<usize>,
    unitary: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct GateListJson {
    n_qubits: usize,
    gates: Vec<GateJson>,
}

impl Gate {
    pub fn new(label: GateLabel, sites: Vec<usize>, unitary: CMatrix) -> Result<Self> {
        if sites.is_empty() || sites.len() > 3 {
            return Err(Error::Invalid(format!("gates act on 1 to 3 qubits, got {}", sites.len())));
        }
        let mut sorted = sites.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != sites.len() {
            return Err(Error::Invalid("repeated gate site".into()));
        }
        let dim = 1 << sites.len();
        if unitary.rows() != dim || unitary.cols() != dim {
            return Err(Error::Shape(format!("{}-qubit gate needs a {dim}x{dim} matrix", sites.len())));
        }
        let err = unitary.unitarity_error();
        if err > UNITARY_TOL {
            return Err(Error::Invalid(format!("gate is not unitary (deviation {err:.3e})")));
        }
        Ok(Gate { label, sites, unitary })
    }
}

impl GateList {
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        let gates = self
            .gates
            .iter()
            .map(|g| GateJson {
                label: g.label,
                sites: g.sites.clone(),
                unitary: (0..g.unitary.rows())
                    .map(|i| (0..g.unitary.cols()).map(|j| [g.unitary[(i, j)].re, g.unitary[(i, j)].im]).collect())
                    .collect(),
            })
            .collect();
        Ok(serde_json::to_string_pretty(&GateListJson { n_qubits: self.n_qubits, gates })?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GateListJson = serde_json::from_str(text)?;
        let gates = raw
            .gates
            .into_iter()
            .map(|g| {
                if let Some(&s) = g.sites.iter().find(|&&s| s >= raw.n_qubits) {
                    return Err(Error::SiteOutOfRange { site: s, n: raw.n_qubits });
                }
                let rows: Vec<Vec<C64>> = g.unitary.iter().map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect()).collect();
                if rows.iter().any(|r| r.len() != rows.len()) {
                    return Err(Error::Shape("gate matrix must be square".into()));
                }
                Gate::new(g.label, g.sites, CMatrix::from_rows(&rows))
            })
            .collect::<Result<_>>()?;
        Ok(GateList { n_qubits: raw.n_qubits, gates })
    }
}

/// Unitary sending each `inputs[k]` to `outputs[k]` (both orthonormal);
/// the complements are paired up by Gram-Schmidt over the computational
/// basis in increasing order.
pub fn complete_unitary(dim: usize, inputs: &[Vec<C64>], outputs: &[Vec<C64>]) -> Result<CMatrix> {
    if inputs.len() != outputs.len() {
        return Err(Error::Shape("inputs and outputs must pair up".into()));
    }
    let extend = |given: &[Vec<C64>]| -> Result<Vec<Vec<C64>>> {
        let mut frame: Vec<Vec<C64>> = given.to_vec();
        for (a, u) in frame.iter().enumerate() {
            if u.len() != dim {
                return Err(Error::Shape(format!("vector of length {} in dimension {dim}", u.len())));
            }
            for (b, w) in frame.iter().enumerate() {
                let ip: C64 = u.iter().zip(w).map(|(x, y)| x.conj() * y).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                if (ip - C64::new(expect, 0.0)).norm() > UNITARY_TOL {
                    return Err(Error::Invalid("prescribed vectors are not orthonormal".into()));
                }
            }
        }
        for e in 0..dim {
            if frame.len() == dim {
                break;
            }
            let mut v = vec![ZERO; dim];
            v[e] = ONE;
            for u in &frame {
                let ip: C64 = u.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                v.iter_mut().zip(u).for_each(|(x, y)| *x -= ip * y);
            }
            let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-8 {
                v.iter_mut().for_each(|x| *x /= norm);
                frame.push(v);
            }
        }
        Ok(frame)
    };
    let ins = extend(inputs)?;
    let outs = extend(outputs)?;
    let mut u = CMatrix::zeros(dim, dim);
    for (a, b) in ins.iter().zip(&outs) {
        for i in 0..dim {
            for j in 0..dim {
                u[(i, j)] += b[i] * a[j].conj();
            }
        }
    }
    Ok(u)
}

fn ket(bits: &[usize]) -> Vec<C64> {
    let mut v = vec![ZERO; 1 << bits.len()];
    v[linear_index(bits, &vec![2; bits.len()])] = ONE;
    v
}

fn combo(terms: &[(f64, &[usize])]) -> Vec<C64> {
    let mut v = vec![ZERO; 1 << terms[0].1.len()];
    for &(c, bits) in terms {
        v.iter_mut().zip(ket(bits)).for_each(|(x, y)| *x += y * c);
    }
    v
}

/// Gate disentangling an excitation state, vertex by vertex, into |0...0>.
/// For each vertex v with remaining neighbours u_1 < ... < u_d the edges
/// {u_i, v} are merged onto {u_d, v} (U1, the last merge is U2), then U3
/// moves the excitation of u_d away leaving sqrt(d) |1>_v. The leftover
/// weighted W state is collapsed onto the first vertex (U4) and flipped.
fn uncompute_gates(g: &Hypergraph) -> Result<Vec<Gate>> {
    let n = g.n_vertices();
    let mut alive = vec![true; n];
    let mut weights: Vec<(usize, usize)> = Vec::new();
    let mut gates = Vec::new();
    for v in 0..n {
        let nbrs: Vec<usize> = g.neighbors(v).into_iter().filter(|&u| alive[u] && u != v).collect();
        alive[v] = false;
        let d = nbrs.len();
        if d == 0 {
            continue;
        }
        let ud = nbrs[d - 1];
        for (i, &ui) in nbrs[..d - 1].iter().enumerate() {
            let acc = (i + 1) as f64;
            let norm = (acc + 1.0).sqrt();
            let input = combo(&[(1.0 / norm, &[1, 0, 1]), (acc.sqrt() / norm, &[0, 1, 1])]);
            let fixed: Vec<Vec<C64>> = [[1, 1, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]].iter().map(|b| ket(b)).collect();
            let mut ins = vec![input];
            ins.extend(fixed.iter().cloned());
            let mut outs = vec![ket(&[0, 1, 1])];
            outs.extend(fixed);
            let label = if i + 2 == d { GateLabel::U2 } else { GateLabel::U1 };
            gates.push(Gate::new(label, vec![ui, ud, v], complete_unitary(8, &ins, &outs)?)?);
        }
        let fixed: Vec<Vec<C64>> = [[0, 0], [1, 0]].iter().map(|b| ket(b)).collect();
        let mut ins = vec![ket(&[1, 1])];
        ins.extend(fixed.iter().cloned());
        let mut outs = vec![ket(&[0, 1])];
        outs.extend(fixed);
        gates.push(Gate::new(GateLabel::U3, vec![ud, v], complete_unitary(4, &ins, &outs)?)?);
        weights.push((v, d));
    }
    let (first, d1) = weights[0];
    let mut acc = d1 as f64;
    for &(w, dw) in &weights[1..] {
        let total = acc + dw as f64;
        let input = combo(&[(acc.sqrt() / total.sqrt(), &[1, 0]), ((dw as f64).sqrt() / total.sqrt(), &[0, 1])]);
        let u = complete_unitary(4, &[input, ket(&[0, 0])], &[ket(&[1, 0]), ket(&[0, 0])])?;
        gates.push(Gate::new(GateLabel::U4, vec![first, w], u)?);
        acc = total;
    }
    let x = CMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]);
    gates.push(Gate::new(GateLabel::U4, vec![first], x)?);
    Ok(gates)
}

/// Preparation circuit |0...0> -> excitation_state(g) for a connected graph.
/// The final bit flip of the disentangling sequence is folded into the
/// first preparation gate, so a single edge needs one two-qubit gate.
pub fn synthesize_circuit(g: &Hypergraph) -> Result<GateList> {
    if !g.is_graph() {
        return Err(Error::Invalid("circuit synthesis needs a graph".into()));
    }
    if g.n_edges() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut prep: Vec<Gate> = uncompute_gates(g)?
        .into_iter()
        .rev()
        .map(|gate| Gate { unitary: gate.unitary.adjoint(), ..gate })
        .collect();
    let flip = prep.remove(0);
    let q = flip.sites[0];
    let next = &mut prep[0];
    let pos = next.sites.iter().position(|&s| s == q).expect("first gate touches the flipped qubit");
    let k = next.sites.len();
    let x = CMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]);
    let id = CMatrix::identity(2);
    let mut lifted = CMatrix::identity(1);
    for i in 0..k {
        lifted = crate::linalg::tensor_product(&lifted, if i == pos { &x } else { &id });
    }
    next.unitary = &next.unitary * &lifted;
    Ok(GateList { n_qubits: g.n_vertices(), gates: prep })
}

pub fn simulate_circuit(gates: &GateList, init: &PureState) -> Result<PureState> {
    if init.dims().len() != gates.n_qubits || !init.is_qubits() {
        return Err(Error::Shape(format!("circuit on {} qubits applied to a {:?} state", gates.n_qubits, init.dims())));
    }
    let mut psi = init.clone();
    for gate in &gates.gates {
        psi = psi.apply(&gate.sites, &gate.unitary)?;
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::family;
    use crate::states::excitation_state;

    fn zeros(n: usize) -> PureState {
        PureState::basis(&vec![2; n], &vec![0; n]).unwrap()
    }

    #[test]
    fn basis_order() {
        assert_eq!(excitation_basis(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn c5_two_excitation_spectrum() {
        let g = family::cycle(5).unwrap();
        let rep = spectrum_report(&hamiltonian_2exc(&g).unwrap(), &g).unwrap();
        // J_- |G> = sqrt|E| |0>, hence J_+ J_- |G> = |E| |G>
        assert!((rep.top - 5.0).abs() < 1e-9);
        assert!((rep.overlap - 1.0).abs() < 1e-9);
        assert!(rep.gap > 1e-9);
    }

    #[test]
    fn restriction_matches_full_space() {
        let g = family::cycle(6).unwrap();
        let full = full_space_hamiltonian(&g).unwrap();
        let num = number_operator(6);
        assert!((&(&full * &num) - &(&num * &full)).max_abs() < 1e-12);
        let h = hamiltonian_2exc(&g).unwrap();
        let basis = excitation_basis(6, 2);
        let dims = [2; 6];
        let idx = |s: &Vec<usize>| {
            let mut b = [0; 6];
            s.iter().for_each(|&v| b[v] = 1);
            linear_index(&b, &dims)
        };
        for (i, s) in basis.iter().enumerate() {
            for (j, t) in basis.iter().enumerate() {
                assert_eq!(h[(i, j)], full[(idx(s), idx(t))]);
            }
        }
    }

    #[test]
    fn three_body() {
        let c6 = family::cycle(6).unwrap();
        let rep = spectrum_report(&hamiltonian_3body(&c6).unwrap(), &c6).unwrap();
        // on the edge sector H = 2 + line-graph adjacency, so 2d for d-regular graphs
        assert!((rep.top - 4.0).abs() < 1e-9 && (rep.overlap - 1.0).abs() < 1e-9 && rep.gap > 1e-9);
        let k5 = family::complete(5, 2).unwrap();
        let rep = spectrum_report(&hamiltonian_3body(&k5).unwrap(), &k5).unwrap();
        assert!((rep.top - 8.0).abs() < 1e-9 && (rep.overlap - 1.0).abs() < 1e-9);
        let hex = family::hexagonal_torus(3, 3).unwrap();
        let rep = spectrum_report(&hamiltonian_3body(&hex).unwrap(), &hex).unwrap();
        assert!((rep.overlap - 1.0).abs() < 1e-9 && rep.gap > 1e-9);
    }

    #[test]
    fn circuit_examples() {
        let edge = family::path(2).unwrap();
        let gl = synthesize_circuit(&edge).unwrap();
        assert_eq!(gl.len(), 1);
        assert!(simulate_circuit(&gl, &zeros(2)).unwrap().approx_eq(&PureState::basis(&[2, 2], &[1, 1]).unwrap(), 1e-12));
        for g in [family::path(3).unwrap(), family::cycle(5).unwrap(), family::complete(5, 2).unwrap(), family::hypercube(3, 2).unwrap()] {
            let gl = synthesize_circuit(&g).unwrap();
            let out = simulate_circuit(&gl, &zeros(g.n_vertices())).unwrap();
            assert!(out.fidelity(&excitation_state(&g).unwrap()) > 1.0 - 1e-9);
            assert!((out.norm() - 1.0).abs() < 1e-10);
        }
        assert!(synthesize_circuit(&Hypergraph::graph(4, &[(0, 1), (2, 3)]).unwrap()).is_err());
    }

    #[test]
    fn json_round_trip_and_trivial_circuits() {
        let gl = synthesize_circuit(&family::cycle(4).unwrap()).unwrap();
        let back = GateList::from_json(&gl.to_json().unwrap()).unwrap();
        assert_eq!(back.len(), gl.len());
        let empty = GateList { n_qubits: 1, gates: vec![] };
        assert!(simulate_circuit(&empty, &zeros(1)).unwrap().approx_eq(&zeros(1), 0.0));
        let x = CMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]);
        let flip = GateList { n_qubits: 1, gates: vec![Gate::new(GateLabel::U4, vec![0], x).unwrap()] };
        assert!(simulate_circuit(&flip, &zeros(1)).unwrap().approx_eq(&PureState::basis(&[2], &[1]).unwrap(), 0.0));
        assert!(simulate_circuit(&flip, &zeros(2)).is_err());
    }
}

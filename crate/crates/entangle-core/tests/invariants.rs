//! Cross-module invariants checked over the shipped families.

mod common;

use entangle_core::algebra::{bush_oa, oa_from_generator, FiniteRing, GeneratorMatrix};
use entangle_core::dynamics::{
    excitation_basis, full_space_hamiltonian, hamiltonian_2exc, hamiltonian_3body, number_operator, spectrum_report,
};
use entangle_core::hypergraph::family::{self, Solid};
use entangle_core::hypergraph::{
    is_product_hypergraph, predicted_concurrence, predicted_generalized_concurrence, predicted_regular_concurrence,
    Hypergraph,
};
use entangle_core::linalg::{CMatrix, C64};
use entangle_core::measures::{generalized_concurrence, is_k_uniform, k_uniformity, two_site_concurrence};
use entangle_core::multiunitary::{is_perfect, FourIndexTensor};
use entangle_core::state::partial_trace;
use entangle_core::states::{ame4_odd, ame5_minimal, excitation_state, gabcd_state, ghz, state_from_oa};
use entangle_core::symmetry::{canonical_h_symmetric, dicke_like, symmetry_group, PermGroup, Permutation};
use entangle_core::measures::is_ame;

fn shipped_graphs() -> Vec<(String, Hypergraph)> {
    let mut out: Vec<(String, Hypergraph)> = Vec::new();
    for n in 3..=12 {
        out.push((format!("cycle:{n}"), family::cycle(n).unwrap()));
    }
    for n in 2..=8 {
        out.push((format!("path:{n}"), family::path(n).unwrap()));
    }
    for n in 3..=7 {
        out.push((format!("complete:{n},2"), family::complete(n, 2).unwrap()));
    }
    for (a, b) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
        out.push((format!("bipartite:{a},{b}"), family::complete_bipartite(a, b).unwrap()));
    }
    for s in [Solid::Tetra, Solid::Octa, Solid::Cube, Solid::Icosa, Solid::Dodeca] {
        out.push((format!("{s:?}"), family::solid_edges(s).unwrap()));
    }
    out.push(("hypercube:3,2".into(), family::hypercube(3, 2).unwrap()));
    out.push(("hypercube:4,2".into(), family::hypercube(4, 2).unwrap()));
    out.push(("orthoplex:3,2".into(), family::orthoplex(3, 2).unwrap()));
    out.push(("orthoplex:4,2".into(), family::orthoplex(4, 2).unwrap()));
    out
}

fn shipped_hypergraphs() -> Vec<(String, Hypergraph)> {
    let mut out = shipped_graphs();
    out.push(("complete:5,3".into(), family::complete(5, 3).unwrap()));
    out.push(("complete:6,3".into(), family::complete(6, 3).unwrap()));
    for s in [Solid::Tetra, Solid::Octa, Solid::Cube, Solid::Icosa] {
        out.push((format!("{s:?} faces"), family::solid_faces(s).unwrap()));
    }
    out.push(("hypercube:3,4".into(), family::hypercube(3, 4).unwrap()));
    out.push(("orthoplex:3,3".into(), family::orthoplex(3, 3).unwrap()));
    out
}

#[test]
fn predicted_concurrence_matches_wootters() {
    for (name, g) in shipped_hypergraphs() {
        let psi = excitation_state(&g).unwrap();
        let n = g.n_vertices();
        for v in 0..n.min(4) {
            for w in v + 1..n {
                let c = two_site_concurrence(&psi, v, w).unwrap();
                let p = predicted_concurrence(&g, v, w).unwrap();
                assert!((c - p).abs() < 1e-9, "{name} ({v},{w}): {c} vs {p}");
            }
            let gc = generalized_concurrence(&psi, v).unwrap();
            let rho = partial_trace(&psi, &[v]).unwrap().mat;
            let det = (rho[(0, 0)] * rho[(1, 1)] - rho[(0, 1)] * rho[(1, 0)]).re;
            assert!((gc * gc - 4.0 * det).abs() < 1e-9, "{name} v={v}");
            assert!((gc - predicted_generalized_concurrence(&g, v).unwrap()).abs() < 1e-9, "{name} v={v}");
        }
    }
}

#[test]
fn regular_graph_concurrence_by_distance() {
    for (name, g) in shipped_graphs() {
        let Ok(_) = predicted_regular_concurrence(&g, 0, 1) else { continue };
        let psi = excitation_state(&g).unwrap();
        for w in 1..g.n_vertices() {
            let c = two_site_concurrence(&psi, 0, w).unwrap();
            assert!((c - predicted_regular_concurrence(&g, 0, w).unwrap()).abs() < 1e-9, "{name} w={w}");
            if g.distance(0, w).unwrap().map_or(true, |d| d > 2) {
                assert!(c.abs() < 1e-9, "{name}: distance > 2 pair entangled");
            }
        }
    }
}

#[test]
fn excitation_separability_matches_product_hypergraphs() {
    let graphs = [
        Hypergraph::graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap(),
        family::complete_bipartite(2, 3).unwrap(),
        family::cycle(5).unwrap(),
        Hypergraph::new(5, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]).unwrap(),
        Hypergraph::graph(6, &[(0, 1), (2, 3), (4, 5), (0, 2)]).unwrap(),
    ];
    for g in graphs {
        let n = g.n_vertices();
        let psi = excitation_state(&g).unwrap();
        for mask in 1..(1u32 << (n - 1)) {
            let a: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let b: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
            let rho = partial_trace(&psi, &a).unwrap().mat;
            let purity = (&rho * &rho).trace().re;
            let separable = (purity - 1.0).abs() < 1e-9;
            assert_eq!(separable, is_product_hypergraph(&g, (&a, &b)).unwrap(), "{a:?}|{b:?}");
        }
    }
}

#[test]
fn hamiltonian_top_eigenpair_over_families() {
    for (name, g) in shipped_graphs().into_iter().filter(|(_, g)| g.n_vertices() <= 16 && g.is_connected()) {
        let rep = spectrum_report(&hamiltonian_2exc(&g).unwrap(), &g).unwrap();
        assert!((rep.top - g.n_edges() as f64).abs() < 1e-9, "{name}: {}", rep.top);
        assert!((rep.overlap - 1.0).abs() < 1e-9 && rep.gap > 1e-9, "{name}");
        if g.is_regular() {
            let d = g.degree(0).unwrap() as f64;
            let rep = spectrum_report(&hamiltonian_3body(&g).unwrap(), &g).unwrap();
            assert!((rep.top - 2.0 * d).abs() < 1e-9, "{name}: {}", rep.top);
            assert!((rep.overlap - 1.0).abs() < 1e-9 && rep.gap > 1e-9, "{name}");
        }
    }
}

#[test]
fn hamiltonians_conserve_excitations() {
    for g in [family::cycle(5).unwrap(), family::complete(4, 2).unwrap(), family::hypercube(3, 2).unwrap()] {
        let n = g.n_vertices();
        let num = number_operator(n);
        let full = full_space_hamiltonian(&g).unwrap();
        assert!((&(&full * &num) - &(&num * &full)).max_abs() < 1e-12);
        // the 3-body operator embedded in the full space keeps the block structure
        let h3 = hamiltonian_3body(&g).unwrap();
        let basis = excitation_basis(n, 2);
        let mut embedded = CMatrix::zeros(1 << n, 1 << n);
        let index = |s: &Vec<usize>| s.iter().map(|&v| 1usize << (n - 1 - v)).sum::<usize>();
        for (i, s) in basis.iter().enumerate() {
            for (j, t) in basis.iter().enumerate() {
                embedded[(index(s), index(t))] = h3[(i, j)];
            }
        }
        assert!((&(&embedded * &num) - &(&num * &embedded)).max_abs() < 1e-12);
    }
}

#[test]
fn oa_generator_strength_and_index() {
    for d in [3, 5, 7] {
        let ring = FiniteRing::galois_default(d).unwrap();
        let g = GeneratorMatrix::new(ring, vec![vec![1, 0, 1, 2], vec![0, 1, 1, 1]]).unwrap();
        let oa = oa_from_generator(&g).unwrap();
        assert_eq!(oa.strength(), 2, "d={d}");
        assert_eq!(oa.index(2).unwrap() * d * d, oa.n_rows());
    }
    for d in [2, 3, 4, 5] {
        for k in 1..=3usize {
            if k > d || d + 1 - k < k {
                continue;
            }
            let oa = bush_oa(d, k).unwrap();
            let s = oa.strength();
            assert!(s >= k, "bush_oa({d},{k}) strength {s}");
            assert_eq!(oa.index(k).unwrap() * d.pow(k as u32), oa.n_rows());
            assert!(oa.irredundant(k).unwrap(), "bush_oa({d},{k})");
            let psi = state_from_oa(&oa, None).unwrap();
            assert!(is_k_uniform(&psi, k, 1e-9).unwrap(), "bush_oa({d},{k}) state");
        }
    }
}

#[test]
fn ring_axioms_for_small_rings() {
    let mut rings: Vec<String> = (2..=16).map(|d| format!("Z{d}")).collect();
    rings.extend([2, 3, 4, 5, 7, 8, 9, 11, 13, 16].iter().map(|q| format!("GF{q}")));
    rings.extend(["Z2+Z2", "Z3+Z3", "Z2+Z4", "Z4+Z4", "Z2+Z2+Z2"].map(String::from));
    for spec in rings {
        let ring = FiniteRing::parse(&spec).unwrap();
        assert!(ring.check_axioms(), "{spec}");
    }
}

#[test]
fn symmetry_groups_of_constructions() {
    for n in 3..=5 {
        let sn = PermGroup::symmetric(n).unwrap();
        for k in 1..n {
            let g = symmetry_group(&dicke_like(n, k, &sn).unwrap(), false).unwrap();
            assert_eq!(g.order(), sn.order());
        }
    }
    let d4 = PermGroup::dihedral(4).unwrap();
    let groups = [
        PermGroup::cyclic(3).unwrap(),
        PermGroup::cyclic(4).unwrap(),
        PermGroup::cyclic(5).unwrap(),
        d4.clone(),
        PermGroup::alternating(4).unwrap(),
        PermGroup::symmetric(3).unwrap(),
        PermGroup::dihedral(5).unwrap(),
        PermGroup::cyclic(6).unwrap(),
    ];
    for h in groups {
        let g = symmetry_group(&canonical_h_symmetric(&h).unwrap(), false).unwrap();
        assert_eq!(g.order(), h.order());
        assert!(h.elements().all(|p| g.contains(p)));
    }
    // complete bipartite K_{2,3}: S_2 x S_3
    let g = symmetry_group(&excitation_state(&family::complete_bipartite(2, 3).unwrap()).unwrap(), false).unwrap();
    assert_eq!(g.order(), 12);
    assert!(g.contains(&Permutation::new(vec![1, 0, 2, 3, 4]).unwrap()));
    assert!(g.contains(&Permutation::new(vec![0, 1, 4, 2, 3]).unwrap()));
}

#[test]
fn uniform_states_from_shipped_arrays() {
    assert_eq!(k_uniformity(&ghz(5, 3).unwrap()).unwrap(), 1);
    for d in [3, 5, 7] {
        assert!(is_ame(&ame4_odd(d).unwrap()).unwrap());
    }
    assert!(is_ame(&ame5_minimal(5).unwrap()).unwrap());
    for spec in ["Z9", "GF9", "Z3+Z3"] {
        let ring = FiniteRing::parse(spec).unwrap();
        let oa = oa_from_generator(&GeneratorMatrix::standard(ring, &[vec![1, 2], vec![1, 1]]).unwrap()).unwrap();
        assert_eq!((oa.n_rows(), oa.strength()), (81, 2), "{spec}");
        assert!(oa.irredundant(2).unwrap());
        assert!(is_ame(&state_from_oa(&oa, None).unwrap()).unwrap(), "{spec}");
    }
}

#[test]
fn gabcd_single_site_reductions() {
    let psi = gabcd_state(C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(3.0, 0.0), C64::new(4.0, 0.0)).unwrap();
    assert!(is_k_uniform(&psi, 1, 1e-9).unwrap());
}

#[test]
fn perfect_iff_ame_for_four_index_tensors() {
    let mut tensors: Vec<FourIndexTensor> = Vec::new();
    for d in [3, 5] {
        tensors.push(FourIndexTensor::from_state(&ame4_odd(d).unwrap()).unwrap());
    }
    for d in 2..=6 {
        tensors.push(FourIndexTensor::from_state(&ghz(4, d).unwrap()).unwrap());
        tensors.push(FourIndexTensor::from_matrix(&CMatrix::identity(d * d), d).unwrap());
    }
    let gf4 = FiniteRing::galois_default(4).unwrap();
    let oa = oa_from_generator(&GeneratorMatrix::new(gf4, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap()).unwrap();
    tensors.push(FourIndexTensor::from_state(&state_from_oa(&oa, None).unwrap()).unwrap());
    let mut perfect_seen = 0;
    for t in tensors {
        let perfect = is_perfect(&t, 1e-9).unwrap();
        assert_eq!(perfect, is_ame(&t.to_state().unwrap()).unwrap(), "d={}", t.d());
        perfect_seen += perfect as usize;
    }
    assert_eq!(perfect_seen, 3);
}

#[test]
fn transcription_file_path() {
    // the verification path used for external coefficient tables, on a known perfect tensor
    let t = FourIndexTensor::from_state(&ame4_odd(3).unwrap()).unwrap();
    let mut csv = String::from("# i,j,k,l,coeff,omega_power\n");
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let v = t.get(i, j, k, l);
                    if v.norm() > 0.0 {
                        csv.push_str(&format!("{},{},{},{},{},0\n", i + 1, j + 1, k + 1, l + 1, v.re));
                    }
                }
            }
        }
    }
    let dir = std::env::temp_dir().join(format!("entangle-transcription-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ame43.csv");
    std::fs::write(&path, csv).unwrap();
    let back = FourIndexTensor::from_csv_file(&path, 3).unwrap();
    assert!(is_perfect(&back, 1e-9).unwrap());
    assert!(is_ame(&back.to_state().unwrap()).unwrap());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn slocc_witnesses_between_uniform_states_are_unitary() {
    use entangle_core::slocc::gabcd::gabcd_orbit;
    use entangle_core::slocc::{slocc_discriminate, SlipMeasure};
    use entangle_core::states::Gabcd;
    // both sides 1-uniform: SLOCC equivalence should come from local unitaries
    let p = Gabcd::real(0.3, 0.7, 1.1, 1.9);
    for q in gabcd_orbit(&p).into_iter().step_by(17) {
        let w = slocc_discriminate(&p.state().unwrap(), &q.state().unwrap(), SlipMeasure::Tau3).unwrap().expect("witness");
        for o in &w.op.ops {
            let g = &o.adjoint() * o;
            let s = g[(0, 0)];
            assert!((&g - &CMatrix::identity(2).scale(s)).max_abs() < 1e-8, "{q:?}");
        }
    }
}

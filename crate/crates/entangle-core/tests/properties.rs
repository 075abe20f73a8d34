//! Property-based checks of the library invariants.

mod common;

use common::random_sl2;
use entangle_core::dynamics::{simulate_circuit, synthesize_circuit};
use entangle_core::hypergraph::{family, predicted_ratio, Hypergraph};
use entangle_core::linalg::{c, hermitian_eigenvalues, partial_transpose_matrix, CMatrix, C64};
use entangle_core::measures::{
    concurrence_mixed, concurrence_pure, entanglement_ratio, generalized_concurrence, is_k_uniform, k_uniformity,
    three_tangle, two_site_concurrence,
};
use entangle_core::multiunitary::{flatten, reshuffle, FourIndexTensor, Pairing};
use entangle_core::slocc::gabcd::gabcd_roots;
use entangle_core::slocc::{cross_ratio, ExtendedComplex, MobiusTransform};
use entangle_core::state::partial_trace;
use entangle_core::states::{ame4_odd, excitation_state, majorana_state, psi_family, Gabcd};
use entangle_core::symmetry::{all_permutations, permute_state, Permutation};
use entangle_core::{DensityMatrix, PureState};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| c(re, im))
}

fn state(n: usize) -> impl Strategy<Value = PureState> {
    prop::collection::vec(complex(), 1 << n).prop_filter_map("zero vector", move |amps| {
        PureState::from_dense(&vec![2; n], &amps).ok()?.normalize().ok()
    })
}

fn qubits(min: usize, max: usize) -> impl Strategy<Value = PureState> {
    (min..=max).prop_flat_map(state)
}

fn sl2() -> impl Strategy<Value = CMatrix> {
    any::<u64>().prop_map(|seed| random_sl2(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    (1u32..(1 << n)).prop_map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

fn hermitian(n: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(complex(), n * n).prop_map(move |v| {
        let m = CMatrix::from_vec(n, n, v);
        let h = &m + &m.adjoint();
        h.scale(c(0.5, 0.0))
    })
}

/// Characteristic polynomial coefficients (constant first) of a 2x2 or 3x3 matrix.
fn char_poly(m: &CMatrix) -> Vec<C64> {
    let t = m.trace();
    if m.rows() == 2 {
        return vec![m.det2(), -t, c(1.0, 0.0)];
    }
    let m2 = m * m;
    let e2 = (t * t - m2.trace()) * 0.5;
    let det = m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)]);
    vec![-det, e2, -t, c(1.0, 0.0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reductions_have_unit_trace((psi, keep) in (2usize..=5).prop_flat_map(|n| (state(n), subset(n)))) {
        let rho = partial_trace(&psi, &keep).unwrap();
        prop_assert!((rho.trace() - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn product_state_reduction_is_pure_factor(a in state(2), b in state(3)) {
        let rho = partial_trace(&a.kron(&b), &[0, 1]).unwrap();
        let va = a.to_dense();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((rho.mat[(i, j)] - va[i] * va[j].conj()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn eigenvalues_are_characteristic_roots(m in (2usize..=3).prop_flat_map(hermitian)) {
        let mut eig = hermitian_eigenvalues(&m).unwrap();
        let mut roots: Vec<f64> = entangle_core::poly::roots(&char_poly(&m)).iter().map(|z| z.re).collect();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (x, y) in eig.iter().zip(&roots) {
            prop_assert!((x - y).abs() < 1e-9, "{eig:?} vs {roots:?}");
        }
    }

    #[test]
    fn partial_transpose_is_an_involution((psi, sites) in (2usize..=4).prop_flat_map(|n| (state(n), subset(n)))) {
        let rho = DensityMatrix::from_pure(&psi);
        let once = partial_transpose_matrix(&rho.mat, &rho.dims, &sites).unwrap();
        let twice = partial_transpose_matrix(&once, &rho.dims, &sites).unwrap();
        prop_assert!(twice.approx_eq(&rho.mat, 0.0));
    }

    #[test]
    fn mixed_concurrence_of_pure_input(psi in state(2)) {
        let via_rho = concurrence_mixed(&DensityMatrix::from_pure(&psi)).unwrap();
        prop_assert!((via_rho - concurrence_pure(&psi).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn three_tangle_is_slocc_invariant(psi in state(3), o1 in sl2(), o2 in sl2(), o3 in sl2()) {
        let moved = psi.apply_local(&[o1, o2, o3]).unwrap();
        prop_assert!((three_tangle(&moved).unwrap() - three_tangle(&psi).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn permutation_preserves_norm_and_uniformity(seed in any::<u64>(), d in prop::sample::select(vec![3usize, 5])) {
        let psi = ame4_odd(d).unwrap();
        let perms = all_permutations(4);
        let sigma = &perms[(seed % perms.len() as u64) as usize];
        let out = permute_state(&psi, sigma).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
        prop_assert_eq!(k_uniformity(&out).unwrap(), 2);
    }

    #[test]
    fn majorana_states_are_symmetric(stars in prop::collection::vec((0.0f64..3.14, 0.0f64..6.28), 2..=6)) {
        let psi = majorana_state(&stars).unwrap();
        for sigma in all_permutations(stars.len()) {
            prop_assert!(permute_state(&psi, &sigma).unwrap().projectively_eq(&psi, 1e-9));
        }
    }

    #[test]
    fn cross_ratio_is_mobius_invariant(pts in prop::collection::vec(complex(), 4), m in sl2()) {
        let z: Vec<ExtendedComplex> = pts.iter().map(|&p| ExtendedComplex::finite(p)).collect();
        let t = MobiusTransform::from_matrix(&m).unwrap();
        let w: Vec<ExtendedComplex> = z.iter().map(|p| t.apply(p)).collect();
        if let (Ok(a), Ok(b)) = (cross_ratio(&z[0], &z[1], &z[2], &z[3]), cross_ratio(&w[0], &w[1], &w[2], &w[3])) {
            prop_assert!(a.chordal(&b) < 1e-10);
        }
    }

    #[test]
    fn gabcd_roots_form_normal_systems(v in prop::collection::vec(complex(), 4)) {
        let p = Gabcd::new(v[0], v[1], v[2], v[3]);
        prop_assume!(p.is_generic(1e-3));
        let roots = gabcd_roots(&p).unwrap();
        for z in &roots {
            prop_assert!(roots.iter().any(|y| (y - c(1.0, 0.0) / z).norm() < 1e-8 * (1.0 + y.norm())));
            prop_assert!(roots.iter().any(|y| (y + z).norm() < 1e-8 * (1.0 + y.norm())));
        }
    }

    #[test]
    fn flattening_recombinations_are_involutions(v in prop::collection::vec(complex(), 81)) {
        let u = CMatrix::from_vec(9, 9, v);
        let r = reshuffle(&reshuffle(&u, 3).unwrap(), 3).unwrap();
        prop_assert!(r.approx_eq(&u, 0.0));
        // re-reading a flattening as ij|kl and flattening again: ik|jl undoes
        // itself, il|jk with columns (j,k) cycles with period three
        let again = |m: &CMatrix, p: Pairing| flatten(&FourIndexTensor::from_matrix(m, 3).unwrap(), p);
        prop_assert!(again(&again(&u, Pairing::IjKl), Pairing::IjKl).approx_eq(&u, 0.0));
        prop_assert!(again(&again(&u, Pairing::IkJl), Pairing::IkJl).approx_eq(&u, 0.0));
        let il = |m: &CMatrix| again(m, Pairing::IlJk);
        prop_assert!(il(&il(&il(&u))).approx_eq(&u, 0.0));
    }

    #[test]
    fn circuit_output_follows_relabeling(seed in any::<u64>(), which in 0usize..3) {
        let g = [family::cycle(5).unwrap(), family::path(4).unwrap(), family::complete_bipartite(2, 2).unwrap()][which].clone();
        let n = g.n_vertices();
        let perms = all_permutations(n);
        let sigma = perms[(seed % perms.len() as u64) as usize].clone();
        let relabeled = g.relabel(sigma.images()).unwrap();
        let zero = PureState::basis(&vec![2; n], &vec![0; n]).unwrap();
        let a = simulate_circuit(&synthesize_circuit(&g).unwrap(), &zero).unwrap();
        let b = simulate_circuit(&synthesize_circuit(&relabeled).unwrap(), &zero).unwrap();
        prop_assert!(permute_state(&a, &sigma).unwrap().projectively_eq(&b, 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn monogamy(psi in qubits(4, 6)) {
        let n = psi.n_sites();
        for v in 0..n {
            let total = generalized_concurrence(&psi, v).unwrap().powi(2);
            let pairs: f64 = (0..n).filter(|&w| w != v).map(|w| two_site_concurrence(&psi, v, w).unwrap().powi(2)).sum();
            prop_assert!(total - pairs >= -1e-9, "v={v}: {total} < {pairs}");
        }
    }
}

/// Random simple graphs on up to 8 vertices with at least one edge.
fn graph() -> impl Strategy<Value = Hypergraph> {
    (3usize..=8).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        prop::sample::subsequence(pairs.clone(), 1..=pairs.len()).prop_map(move |e| Hypergraph::graph(n, &e).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn entanglement_ratio_in_unit_interval(g in graph()) {
        let psi = excitation_state(&g).unwrap();
        for v in 0..g.n_vertices() {
            let d = g.degree(v).unwrap();
            if d == 0 || d == g.n_edges() {
                continue;
            }
            let r = entanglement_ratio(&psi, v).unwrap();
            prop_assert!((-1e-12..=1.0 + 1e-9).contains(&r));
            prop_assert!((r - predicted_ratio(&g, v).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn psi_zero_family_is_one_uniform(n in 3usize..=8) {
        let psi = psi_family(n, 0).unwrap();
        prop_assert!(is_k_uniform(&psi, 1, 1e-9).unwrap());
        prop_assert_eq!(k_uniformity(&psi).unwrap(), 1);
    }
}

#[test]
fn identity_relabeling_is_trivial() {
    let g = family::cycle(4).unwrap();
    let id = Permutation::identity(4);
    assert_eq!(g.relabel(id.images()).unwrap(), g);
}

#![allow(dead_code)]

use entangle_core::linalg::{c, CMatrix, C64};
use entangle_core::PureState;
use rand::Rng;

pub fn random_c64<R: Rng>(rng: &mut R) -> C64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_qubits<R: Rng>(rng: &mut R, n: usize) -> PureState {
    let amps: Vec<C64> = (0..1usize << n).map(|_| random_c64(rng)).collect();
    PureState::from_dense(&vec![2; n], &amps).unwrap().normalize().unwrap()
}

/// Random 2x2 matrix rescaled to determinant one.
pub fn random_sl2<R: Rng>(rng: &mut R) -> CMatrix {
    loop {
        let m = CMatrix::from_rows(&[vec![random_c64(rng), random_c64(rng)], vec![random_c64(rng), random_c64(rng)]]);
        let det = m.det2();
        if det.norm() > 0.05 {
            return m.scale(C64::new(1.0, 0.0) / det.sqrt());
        }
    }
}

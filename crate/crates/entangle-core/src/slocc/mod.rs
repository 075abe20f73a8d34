//! SLOCC machinery: SLIP roots, Moebius geometry, finite discrimination,
//! the G_abcd family and local monomial equivalence.

pub mod discriminate;
pub mod gabcd;
pub mod lm;
pub mod mobius;
pub mod roots;

pub use discriminate::{slocc_discriminate, LocalOperator, Witness};
pub use gabcd::{gabcd_orbit, gabcd_roots};
pub use lm::{lm_equivalence, MonomialWitness};
pub use mobius::{
    cross_ratio, g24_group, mobius_from_triplets, normal_form_transform, operator_from_mobius, root_map, six_values,
    ExtendedComplex, MobiusTransform,
};
pub use roots::{slip_roots, split_state, RootSystem, SlipMeasure};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, CMatrix, C64};
    use crate::states::{gabcd_state, Gabcd};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_sl2(rng: &mut ChaCha8Rng) -> CMatrix {
        let mut g = || c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let m = CMatrix::from_rows(&[vec![g(), g()], vec![g(), g()]]);
        let s = m.det2().sqrt();
        m.scale(C64::new(1.0, 0.0) / s)
    }

    #[test]
    fn gabcd_roots_example() {
        let p = Gabcd::real(1.0, 2.0, 3.0, 4.0);
        let (a, b) = gabcd::gabcd_ab(&p);
        assert_eq!((a.re, b.re), (75.0, 21.0));
        let mut mags: Vec<f64> = gabcd_roots(&p).unwrap().iter().map(|z| z.norm()).collect();
        mags.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!((mags[0] - 0.6022).abs() < 1e-4 && (mags[3] - 1.6605).abs() < 1e-4);
        assert!((mags[0] * mags[3] - 1.0).abs() < 1e-9);
        let sr = slip_roots(&gabcd_state(p.a, p.b, p.c, p.d).unwrap(), 0, SlipMeasure::Tau3).unwrap();
        let gr: Vec<ExtendedComplex> = gabcd_roots(&p).unwrap().into_iter().map(Into::into).collect();
        assert!(mobius::multiset_distance(&sr.roots, &gr) < 1e-8);
        assert!(gabcd_roots(&Gabcd::real(1.0, 1.0, 3.0, 4.0)).is_err());
    }

    #[test]
    fn orbit_size() {
        let orbit = gabcd_orbit(&Gabcd::real(1.0, 2.0, 3.0, 4.0));
        assert_eq!(orbit.len(), 192);
        assert!(gabcd::in_orbit(&Gabcd::real(1.0, 2.0, 3.0, 4.0), &Gabcd::real(4.0, 3.0, 2.0, 1.0), 1e-12));
        assert!(!gabcd::in_orbit(&Gabcd::real(1.0, 2.0, 3.0, 4.0), &Gabcd::real(1.0, 2.0, 3.0, 5.0), 1e-12));
    }

    #[test]
    fn root_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let amps: Vec<C64> = (0..16).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let psi = crate::state::PureState::from_dense(&[2; 4], &amps).unwrap();
        let r0 = slip_roots(&psi, 0, SlipMeasure::Tau3).unwrap();
        let o: Vec<CMatrix> = (0..4).map(|_| random_sl2(&mut rng)).collect();
        let others = psi.apply(&[1], &o[1]).unwrap().apply(&[2], &o[2]).unwrap().apply(&[3], &o[3]).unwrap();
        assert!(r0.matches(&slip_roots(&others, 0, SlipMeasure::Tau3).unwrap(), 1e-8));
        let moved = slip_roots(&psi.apply(&[0], &o[0]).unwrap(), 0, SlipMeasure::Tau3).unwrap();
        let m = root_map(&o[0]).unwrap();
        let predicted: Vec<ExtendedComplex> = r0.roots.iter().map(|z| m.apply(z)).collect();
        assert!(mobius::multiset_distance(&predicted, &moved.roots) < 1e-8);
    }

    #[test]
    fn discriminate_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let amps: Vec<C64> = (0..16).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let psi = crate::state::PureState::from_dense(&[2; 4], &amps).unwrap();
        let o = LocalOperator::new((0..4).map(|_| random_sl2(&mut rng)).collect()).unwrap();
        let target = o.apply(&psi).unwrap();
        let w = slocc_discriminate(&psi, &target, SlipMeasure::Tau3).unwrap().expect("witness");
        let img = w.op.apply(&psi).unwrap().scale(w.scalar);
        assert!(img.approx_eq(&target, 1e-8));
    }

    #[test]
    fn gabcd_pairs() {
        let g = |a, b, c, d| gabcd_state(C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0), C64::new(d, 0.0)).unwrap();
        let base = g(1.0, 2.0, 3.0, 4.0);
        assert!(slocc_discriminate(&base, &g(1.0, 2.0, 3.0, 5.0), SlipMeasure::Tau3).unwrap().is_none());
        let w = slocc_discriminate(&base, &g(-2.0, -1.0, 3.0, 4.0), SlipMeasure::Tau3).unwrap().expect("witness");
        let rx = &mobius::rotation_generators()[0];
        // every factor is R_x(pi/2) up to a sign
        let rx4: Vec<CMatrix> = vec![rx.clone(); 4];
        let direct = base.apply_local(&rx4).unwrap();
        assert!(direct.projectively_eq(&g(-2.0, -1.0, 3.0, 4.0), 1e-12));
        assert!(w.op.ops.len() == 4);
        assert!(matches!(
            slocc_discriminate(&crate::states::ghz(4, 2).unwrap(), &base, SlipMeasure::Tau3),
            Err(crate::Error::Inapplicable(_)) | Err(crate::Error::Degenerate(_))
        ));
    }
}

//! Matrix arithmetic over `O`, the residue map and the generic type of
//! `GL(n, O)`.

mod common;

use common::*;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use valring::check::corpus;
use valring::classify::in_p_trans;
use valring::coeff::Tower;
use valring::formula::{evaluate, Formula, Truth};
use valring::realize::{
    fresh_point, generic_gl, in_p_g, left_translate, lift_mat, mat_det, mat_inv, mat_mul,
    perturb, res_mat, OMatrix, ResidueMatrix,
};
use valring::series::Series;

fn dim() -> impl Strategy<Value = usize> {
    1usize..=3
}

fn gl_element(n: usize) -> impl Strategy<Value = OMatrix> {
    (seeded(), any::<bool>()).prop_map(move |(mut rng, tower)| corpus::gl_element(&mut rng, n, tower))
}

fn gl_pair() -> impl Strategy<Value = (OMatrix, OMatrix)> {
    dim().prop_flat_map(|n| (gl_element(n), gl_element(n)))
}

fn gl_atoms(n: usize) -> impl Strategy<Value = Vec<Formula>> {
    seeded().prop_map(move |mut rng: ChaCha8Rng| {
        (0..8).map(|_| corpus::gl_atom(&mut rng, &cfg(), n)).collect()
    })
}

fn residue_matrix() -> impl Strategy<Value = ResidueMatrix> {
    dim().prop_flat_map(|n| {
        prop::collection::vec(coefficient(), n * n)
            .prop_filter_map("invertible", move |e| {
                let r = ResidueMatrix::new(n, e).ok()?;
                (!r.det().is_zero()).then_some(r)
            })
    })
}

fn identity_mod(m: &OMatrix, prec: i64) -> bool {
    let id = OMatrix::identity(m.n());
    m.entries()
        .iter()
        .zip(id.entries())
        .all(|(a, b)| congruent(a, b, prec))
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn residue_map_is_multiplicative((a, b) in gl_pair()) {
        let ab = mat_mul(&a, &b).unwrap();
        let lhs = res_mat(&ab).unwrap();
        prop_assert_eq!(lhs, res_mat(&a).unwrap().mul(&res_mat(&b).unwrap()).unwrap());
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in gl_pair()) {
        let ab = mat_mul(&a, &b).unwrap();
        prop_assert_eq!(mat_det(&ab), &mat_det(&a) * &mat_det(&b));
    }

    #[test]
    fn inverse_reduces_to_residue_inverse(a in dim().prop_flat_map(gl_element), prec in 1i64..8) {
        let inv = mat_inv(&a, prec).unwrap();
        prop_assert!(identity_mod(&mat_mul(&a, &inv).unwrap(), prec));
        prop_assert_eq!(res_mat(&inv).unwrap(), res_mat(&a).unwrap().inverse().unwrap());
    }

    #[test]
    fn lift_is_a_section(r in residue_matrix()) {
        prop_assert_eq!(res_mat(&lift_mat(&r).unwrap()).unwrap(), r);
    }

    #[test]
    fn matrix_json_round_trips(a in dim().prop_flat_map(gl_element)) {
        prop_assert_eq!(OMatrix::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn shifted_generic_point_realizes_p_trans(mut rng in seeded(), a in integral()) {
        let phi = corpus::formula(&mut rng, &cfg(), 3);
        let (_, g) = fresh_point(&Tower::with_len(1));
        let want = Truth::from_bool(in_p_trans(&phi).unwrap());
        prop_assert_eq!(evaluate(&phi, &[&g + &a]).unwrap(), want);
    }

    #[test]
    fn left_translation_invariance((n, atoms, h) in (1usize..=3).prop_flat_map(|n| (Just(n), gl_atoms(n), any::<u64>()))) {
        let (_, gt) = generic_gl(n, &Tower::with_len(1));
        let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(h);
        let h = corpus::gl_element(&mut rng, n, false);
        for phi in &atoms {
            let moved = left_translate(phi, &h).unwrap();
            prop_assert_eq!(in_p_g(&moved, &gt).unwrap(), in_p_g(phi, &gt).unwrap());
        }
    }

    #[test]
    fn small_perturbations_are_dominated(n in dim(), mut rng in seeded()) {
        let (_, gt) = generic_gl(n, &Tower::with_len(1));
        let m = corpus::small_matrix(&mut rng, n);
        let moved = perturb(&gt, &m).unwrap();
        for _ in 0..6 {
            let phi = corpus::gl_atom(&mut rng, &cfg(), n);
            let want = Truth::from_bool(in_p_g(&phi, &gt).unwrap());
            prop_assert_eq!(evaluate(&phi, moved.entries()).unwrap(), want);
        }
    }

    #[test]
    fn non_units_are_rejected(n in dim(), k in 1i64..3) {
        let m = OMatrix::scalar(n, Series::t().pow(k as u32));
        prop_assert!(mat_inv(&m, 4).is_err());
    }
}

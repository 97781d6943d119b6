//! Printing, normalisation and substitution laws for formulas.

mod common;

use common::*;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use valring::check::corpus;
use valring::formula::{evaluate, parse, Formula, Truth};
use valring::series::{KPoly, Series, Valuation};

fn formula() -> impl Strategy<Value = Formula> {
    seeded().prop_map(|mut rng: ChaCha8Rng| corpus::formula(&mut rng, &cfg(), 3))
}

fn point() -> impl Strategy<Value = Series> {
    prop_oneof![3 => integral(), 1 => exact_series(-2, 3)]
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn parse_inverts_display(phi in formula()) {
        prop_assert_eq!(parse(&phi.to_string()).unwrap(), phi);
    }

    #[test]
    fn normal_form_preserves_truth(phi in formula(), a in point()) {
        let nnf = phi.normalize().to_formula();
        let point = [a];
        prop_assert_eq!(evaluate(&nnf, &point).unwrap(), evaluate(&phi, &point).unwrap());
    }

    #[test]
    fn substitution_commutes_with_evaluation(phi in formula(), p in one_var_poly(), a in point()) {
        let pa = p.eval(std::slice::from_ref(&a)).unwrap();
        let lhs = evaluate(&phi.substitute(&[p]).unwrap(), &[a]).unwrap();
        prop_assert_eq!(lhs, evaluate(&phi, &[pa]).unwrap());
    }

    #[test]
    fn nv_means_valuation_one(f in one_var_poly(), a in point()) {
        let fa = f.eval(std::slice::from_ref(&a)).unwrap();
        let want = Truth::from_bool(fa.valuation().unwrap() == Valuation::Finite(1));
        prop_assert_eq!(evaluate(&Formula::nv(f), &[a]).unwrap(), want);
    }

    #[test]
    fn exact_points_decide(phi in formula(), a in point()) {
        prop_assert_ne!(evaluate(&phi, &[a]).unwrap(), Truth::Unknown);
    }

    #[test]
    fn negation_flips(phi in formula(), a in point()) {
        let point = [a];
        let t = evaluate(&phi, &point).unwrap();
        prop_assert_eq!(evaluate(&phi.clone().not(), &point).unwrap(), t.not());
    }
}

#[test]
fn div_of_zeros_holds() {
    let phi = Formula::div(KPoly::zero(), KPoly::zero());
    assert_eq!(evaluate(&phi, &[Series::t()]).unwrap(), Truth::True);
}

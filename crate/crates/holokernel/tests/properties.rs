//! Property-based invariants for the exact series core and the composition
//! combinatorics.

use holokernel::gjms::{coeff_pair, Composition};
use holokernel::ring::RingElement;
use holokernel::scalar::ExactScalar;
use holokernel::series::{
    binomial_power_series, radial_second_derivative, series_inverse, series_mul, series_sqrt,
    EvenSeries,
};
use holokernel::Sym;
use proptest::prelude::*;

fn arb_scalar() -> impl Strategy<Value = ExactScalar> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ExactScalar::ratio(n, d))
}

fn arb_series(order: usize) -> impl Strategy<Value = EvenSeries> {
    proptest::collection::vec(arb_scalar(), order + 1).prop_map(|coeffs| {
        EvenSeries::from_coeffs(
            coeffs
                .into_iter()
                .map(RingElement::from_scalar)
                .collect(),
        )
    })
}

fn arb_unit_series(order: usize) -> impl Strategy<Value = EvenSeries> {
    proptest::collection::vec(arb_scalar(), order).prop_map(|tail| {
        let mut coeffs = vec![RingElement::one()];
        coeffs.extend(tail.into_iter().map(RingElement::from_scalar));
        EvenSeries::from_coeffs(coeffs)
    })
}

fn arb_composition() -> impl Strategy<Value = Composition> {
    proptest::collection::vec(1u32..=4, 1..=5).prop_map(Composition::new)
}

proptest! {
    #[test]
    fn mul_commutes(a in arb_series(8), b in arb_series(8)) {
        prop_assert_eq!(series_mul(&a, &b), series_mul(&b, &a));
    }

    #[test]
    fn mul_associates(a in arb_series(8), b in arb_series(8), c in arb_series(8)) {
        let left = series_mul(&series_mul(&a, &b), &c);
        let right = series_mul(&a, &series_mul(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sqrt_squares_back(a in arb_unit_series(8)) {
        let w = series_sqrt(&a);
        prop_assert_eq!(series_mul(&w, &w), a);
    }

    #[test]
    fn inverse_multiplies_to_one(a in arb_unit_series(8)) {
        let inv = series_inverse(&a);
        prop_assert_eq!(series_mul(&a, &inv), EvenSeries::one(8));
    }

    #[test]
    fn binomial_exponent_addition(c in arb_scalar(), e1 in -6i64..=6, e2 in -6i64..=6) {
        let base = RingElement::from_scalar(c);
        let lhs = binomial_power_series(&base, &RingElement::from_int(e1 + e2), 7);
        let rhs = series_mul(
            &binomial_power_series(&base, &RingElement::from_int(e1), 7),
            &binomial_power_series(&base, &RingElement::from_int(e2), 7),
        );
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn radial_operator_is_linear(a in arb_series(7), b in arb_series(7), s in arb_scalar()) {
        let coeff = RingElement::sym(Sym::N);
        let combined = a.add(&b.scale_scalar(&s));
        let lhs = radial_second_derivative(&combined, &coeff);
        let rhs = radial_second_derivative(&a, &coeff)
            .add(&radial_second_derivative(&b, &coeff).scale_scalar(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn radial_operator_product_rule(i in 0usize..=4, j in 0usize..=4) {
        // the operator D = 4 rho d^2 + (2 - 2a) d satisfies
        // D(fg) = D(f) g + f D(g) + 8 rho f' g' on monomials
        let order = 10usize;
        let mono = |k: usize| {
            let mut coeffs = vec![RingElement::zero(); order + 1];
            coeffs[k] = RingElement::one();
            EvenSeries::from_coeffs(coeffs)
        };
        let a = RingElement::sym(Sym::N);
        let f = mono(i);
        let g = mono(j);
        let lhs = radial_second_derivative(&series_mul(&f, &g), &a);
        let cross = series_mul(&f.d_rho(), &g.d_rho())
            .shift_up(1)
            .scale(&RingElement::from_int(8));
        let rhs = series_mul(&radial_second_derivative(&f, &a), &g.truncate(order - 1))
            .add(&series_mul(&f.truncate(order - 1), &radial_second_derivative(&g, &a)))
            .add(&cross.truncate(order - 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplicity_reversal(i in arb_composition()) {
        let (m, _) = coeff_pair(&i);
        let (mr, _) = coeff_pair(&i.reversed());
        prop_assert_eq!(m, mr);
    }

    #[test]
    fn reversal_is_involutive(i in arb_composition()) {
        prop_assert_eq!(i.reversed().reversed(), i);
    }

    #[test]
    fn singleton_multiplicities_are_one(n in 1u32..=9) {
        let (m, ni) = coeff_pair(&Composition::new(vec![n]));
        prop_assert!(m.is_one());
        prop_assert!(ni.is_one());
    }
}

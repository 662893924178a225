//! Randomized property checks for the exact-arithmetic kernels: ring
//! axioms for the polynomial types, valuation arithmetic, and the
//! order-independence of crystal membership.

use proptest::prelude::*;

use mv_exact::exactpoly::{GroupAlgebraElement, LaurentPoly, QScalar};
use mv_exact::lusztig::ToricChart;
use mv_exact::padic::valuation;
use mv_exact::rootsys::{CartanDatum, Series};

const VARS: [&str; 3] = ["b_1", "b_2", "b_3"];

fn shared_chart() -> &'static ToricChart {
    static CHART: std::sync::OnceLock<ToricChart> = std::sync::OnceLock::new();
    CHART.get_or_init(|| {
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        ToricChart::new(&g2, &[1, 0, 1, 0, 1, 0]).unwrap()
    })
}

fn laurent_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(
        (
            prop::collection::vec(-3i64..=3, 3),
            -4i64..=4,
        ),
        0..5,
    )
    .prop_map(|terms| {
        let mut out = LaurentPoly::zero(&VARS);
        for (e, c) in terms {
            out = out.add(&LaurentPoly::monomial(&VARS, &e, c));
        }
        out
    })
}

fn qscalar_strategy() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((-5i64..=5, -4i64..=4), 0..4).prop_map(|terms| {
        let mut out = QScalar::zero();
        for (k, c) in terms {
            out = out.add(&QScalar::q_pow(k, c));
        }
        out
    })
}

fn group_algebra_strategy() -> impl Strategy<Value = GroupAlgebraElement> {
    prop::collection::vec(
        (prop::collection::vec(-3i64..=3, 2), -5i64..=5, -3i64..=3),
        0..4,
    )
    .prop_map(|terms| {
        let mut out = GroupAlgebraElement::zero();
        for (w, k, c) in terms {
            out = out.add(&GroupAlgebraElement::monomial(&w, QScalar::q_pow(k, c)));
        }
        out
    })
}

proptest! {
    #[test]
    fn laurent_ring_axioms(
        a in laurent_strategy(),
        b in laurent_strategy(),
        c in laurent_strategy(),
    ) {
        prop_assert_eq!(
            a.add(&b).to_canonical_string(),
            b.add(&a).to_canonical_string()
        );
        prop_assert_eq!(
            a.mul(&b).to_canonical_string(),
            b.mul(&a).to_canonical_string()
        );
        prop_assert_eq!(
            a.mul(&b.mul(&c)).to_canonical_string(),
            a.mul(&b).mul(&c).to_canonical_string()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c)).to_canonical_string(),
            a.mul(&b).add(&a.mul(&c)).to_canonical_string()
        );
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn laurent_exact_division_inverts_multiplication(
        a in laurent_strategy(),
        b in laurent_strategy(),
    ) {
        prop_assume!(!b.is_zero());
        let product = a.mul(&b);
        let quotient = product
            .exact_divide(&b)
            .expect("divides by construction");
        prop_assert_eq!(
            quotient.to_canonical_string(),
            a.to_canonical_string()
        );
    }

    #[test]
    fn qscalar_ring_axioms(
        a in qscalar_strategy(),
        b in qscalar_strategy(),
        c in qscalar_strategy(),
    ) {
        prop_assert!(a.add(&b).sub(&b.add(&a)).is_zero());
        prop_assert!(a.mul(&b).sub(&b.mul(&a)).is_zero());
        prop_assert!(a.mul(&b.mul(&c)).sub(&a.mul(&b).mul(&c)).is_zero());
        prop_assert!(a.mul(&b.add(&c)).sub(&a.mul(&b).add(&a.mul(&c))).is_zero());
        prop_assert!(a.mul(&QScalar::one()).sub(&a).is_zero());
    }

    #[test]
    fn group_algebra_shift_is_multiplication_by_a_monomial(
        a in group_algebra_strategy(),
        shift in prop::collection::vec(-3i64..=3, 2),
    ) {
        let unit = GroupAlgebraElement::monomial(&shift, QScalar::one());
        prop_assert!(a.shift(&shift).sub(&a.mul(&unit)).is_zero());
    }

    #[test]
    fn valuation_is_additive(
        an in 1i64..2000, ad in 1i64..2000,
        bn in 1i64..2000, bd in 1i64..2000,
    ) {
        use num_bigint::BigInt;
        use num_rational::Ratio;
        let a = Ratio::new(BigInt::from(an), BigInt::from(ad));
        let b = Ratio::new(BigInt::from(bn), BigInt::from(bd));
        let va = valuation(&a, 5).unwrap();
        let vb = valuation(&b, 5).unwrap();
        prop_assert_eq!(valuation(&(&a * &b), 5).unwrap(), va + vb);
        if va != vb {
            prop_assert_eq!(valuation(&(&a + &b), 5).unwrap(), va.min(vb));
        }
    }

    #[test]
    fn crystal_membership_is_monotone_in_the_weight(
        m in prop::collection::vec(0i64..=3, 6),
        l1 in 0i64..=3,
        l2 in 0i64..=3,
    ) {
        let chart = shared_chart();
        let kappa = [l1 + 1, l2 + 1];
        let bigger = [l1 + 2, l2 + 2];
        if chart.in_crystal(&kappa, &m) {
            prop_assert!(chart.in_crystal(&bigger, &m));
        }
    }

    #[test]
    fn bounding_data_is_affine(
        m in prop::collection::vec(0i64..=4, 6),
        l1 in 0i64..=3,
        l2 in 0i64..=3,
    ) {
        let chart = shared_chart();
        let lambda = [l1, l2];
        let zero = [0i64, 0];
        let at_zero_m = chart.bounding_data(&lambda, &vec![0; 6]);
        let at_zero_l = chart.bounding_data(&zero, &m);
        let at_origin = chart.bounding_data(&zero, &vec![0; 6]);
        let full = chart.bounding_data(&lambda, &m);
        for k in 0..6 {
            prop_assert_eq!(full[k], at_zero_m[k] + at_zero_l[k] - at_origin[k]);
        }
    }
}

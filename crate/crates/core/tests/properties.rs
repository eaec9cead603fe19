//! Property tests of the scalar field and its interfaces: exact field
//! axioms, the specialization homomorphism, canonical-form idempotence, and
//! the exact string round-trip.

use proptest::prelude::*;

use bp_core::scalars::{Poly, Rational, Scalar};

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(rational_strategy(), 0..=max_deg)
        .prop_map(Poly::from_coeffs)
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (poly_strategy(3), poly_strategy(3)).prop_map(|(num, den)| {
        if den.is_zero() {
            Scalar::new(num, Poly::one()).unwrap()
        } else {
            Scalar::new(num, den).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms_hold_exactly(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        // associativity and commutativity
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        // distributivity
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        // inverses
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!( (&a * &a.recip().unwrap()).is_one() );
        }
    }

    #[test]
    fn equality_matches_cross_multiplication(a in scalar_strategy(), b in scalar_strategy()) {
        let cross = a.numerator().mul(b.denominator()) == b.numerator().mul(a.denominator());
        prop_assert_eq!(a == b, cross);
    }

    #[test]
    fn specialization_is_a_ring_homomorphism(
        a in scalar_strategy(),
        b in scalar_strategy(),
        kn in -9i64..=9,
        kd in 1i64..=4,
    ) {
        let k0 = Rational::new(kn, kd);
        let (Ok(fa), Ok(fb)) = (a.specialize(&k0), b.specialize(&k0)) else {
            return Ok(()); // pole of an operand: nothing to check
        };
        if let Ok(sum) = (&a + &b).specialize(&k0) {
            prop_assert_eq!(sum, &fa + &fb);
        }
        if let Ok(prod) = (&a * &b).specialize(&k0) {
            prop_assert_eq!(prod, &fa * &fb);
        }
        if let Ok(diff) = (&a - &b).specialize(&k0) {
            prop_assert_eq!(diff, &fa - &fb);
        }
        if !b.is_zero() && !fb.is_zero() {
            if let Ok(quot) = a.divide(&b).unwrap().specialize(&k0) {
                prop_assert_eq!(quot, &fa / &fb);
            }
        }
    }

    #[test]
    fn normalization_is_idempotent(a in scalar_strategy()) {
        // rebuilding from the stored parts changes nothing
        let again = Scalar::new(a.numerator().clone(), a.denominator().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        // denominator is monic and coprime to the numerator
        prop_assert!(again.denominator().leading().is_one());
        prop_assert!(a.numerator().gcd(a.denominator()).is_one() || a.is_zero());
    }

    #[test]
    fn string_round_trip_is_exact(a in scalar_strategy()) {
        let s = a.to_string();
        let back: Scalar = s.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rational_string_round_trip(r in rational_strategy()) {
        let back: Rational = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }
}

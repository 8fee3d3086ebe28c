//! The n̄ solver and closed forms at random rational points of D0.

use g2cert::bigcell::{discriminant, nbar_closed_form, parabolic_part, solve_nbar};
use g2cert::levi::{in_parabolic, DomainPoint};
use g2cert::ring::{rat, Rat};
use g2cert::Error;
use num_traits::Zero;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // The defining property: ẇ0⁻¹·exp(n)·exp(-n̄) lands in P exactly when n̄ is right.
    #[test]
    fn solver_matches_closed_form_and_lands_in_p(x21 in small_rat(), x31 in small_rat(), x32 in small_rat()) {
        prop_assume!(!discriminant(&x21, &x32).is_zero());
        let solved = solve_nbar(&x21, &x31, &x32).unwrap();
        let closed = nbar_closed_form(&x21, &x31, &x32).unwrap();
        prop_assert_eq!(&solved, &closed);
        let n = DomainPoint::d0(x21, x31, x32).coords;
        prop_assert!(in_parabolic(&parabolic_part(&n, &solved).unwrap()));
    }

    #[test]
    fn vanishing_discriminant_is_rejected(x21 in small_rat(), x31 in small_rat()) {
        let x32 = -(&x21 * &x21);
        prop_assert_eq!(solve_nbar(&x21, &x31, &x32), Err(Error::DiscriminantVanishes));
        prop_assert!(nbar_closed_form(&x21, &x31, &x32).is_err());
    }
}

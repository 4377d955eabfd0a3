mod common;

use common::{dyadic_map, pl_map, small_rational};
use lineact_core::{PlMap, Window};
use lineact_core::rational::int;
use proptest::prelude::*;

proptest! {
    #[test]
    fn composition_is_associative(f in pl_map(), g in pl_map(), h in pl_map()) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
    }

    #[test]
    fn inverses_cancel(f in pl_map()) {
        prop_assert!(f.compose(&f.invert()).is_identity());
        prop_assert!(f.invert().compose(&f).is_identity());
        prop_assert_eq!(f.invert().invert(), f);
    }

    #[test]
    fn evaluation_respects_composition(f in pl_map(), g in pl_map(), x in small_rational()) {
        prop_assert_eq!(f.compose(&g).evaluate(&x), f.evaluate(&g.evaluate(&x)));
        prop_assert_eq!(f.preimage(&f.evaluate(&x)), x);
    }

    #[test]
    fn maps_are_strictly_increasing(f in pl_map(), x in small_rational(), y in small_rational()) {
        prop_assert_eq!(x.cmp(&y), f.evaluate(&x).cmp(&f.evaluate(&y)));
    }

    #[test]
    fn normal_form_is_idempotent(f in pl_map()) {
        let again = PlMap::new(f.breakpoints().to_vec(), f.pieces().to_vec()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert_eq!(PlMap::from_record(&f.to_record()).unwrap(), f);
    }

    #[test]
    fn dyadic_maps_are_closed(f in dyadic_map(), g in dyadic_map()) {
        prop_assert!(f.is_dyadic());
        prop_assert!(f.compose(&g).is_dyadic());
        prop_assert!(f.invert().is_dyadic());
    }

    #[test]
    fn translation_conjugation_is_a_flow(f in pl_map(), s in small_rational(), t in small_rational()) {
        prop_assert_eq!(f.translate_conjugate(&s).translate_conjugate(&t), f.translate_conjugate(&(&s + &t)));
        prop_assert_eq!(f.translate_conjugate(&s), f.conjugate_by(&PlMap::translation(s.clone())));
    }

    #[test]
    fn powers_add(f in pl_map(), a in -3i64..=3, b in -3i64..=3) {
        prop_assert_eq!(f.power(a).compose(&f.power(b)), f.power(a + b));
    }

    #[test]
    fn sup_distance_is_symmetric_and_detects_agreement(f in pl_map(), g in pl_map()) {
        let w = Window::new(int(-5), int(5)).unwrap();
        prop_assert_eq!(f.sup_distance(&g, &w), g.sup_distance(&f, &w));
        prop_assert_eq!(f.sup_distance(&g, &w) == int(0), f.agrees_on(&g, &w));
    }
}

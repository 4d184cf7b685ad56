//! Property tests over randomly generated tables: the exact transform
//! round trips and the equivalence of the two Lovász-extension evaluators.

use lovasz::set_function::{MobiusRep, PointVector, SetFunction};
use lovasz::subset::full_mask;
use lovasz::{ratio, BigRational};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn sized_table() -> impl Strategy<Value = (usize, Vec<BigRational>)> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(rational(), 1 << n).prop_map(move |t| (n, t))
    })
}

fn table_with_point() -> impl Strategy<Value = (usize, Vec<BigRational>, Vec<f64>)> {
    (1usize..=6).prop_flat_map(|n| {
        (
            proptest::collection::vec(rational(), 1 << n),
            proptest::collection::vec(0.0f64..=1.0, n),
        )
            .prop_map(move |(t, x)| (n, t, x))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zeta_inverts_mobius((n, values) in sized_table()) {
        let v = SetFunction::new(n, values).unwrap();
        prop_assert_eq!(v.mobius_transform().zeta_transform(), v);
    }

    #[test]
    fn mobius_inverts_zeta((n, coeffs) in sized_table()) {
        let a = MobiusRep::new(n, coeffs).unwrap();
        prop_assert_eq!(a.zeta_transform().mobius_transform(), a);
    }

    #[test]
    fn lovasz_evaluators_agree((n, values, point) in table_with_point()) {
        let v = SetFunction::new(n, values).unwrap();
        let a = v.mobius_transform();
        let x = PointVector::new(point).unwrap();
        let sorted = v.eval_lovasz_sorted(&x).unwrap();
        let minpoly = a.eval_lovasz_minpoly(&x).unwrap();
        prop_assert!((sorted - minpoly).abs() < 1e-10, "{} vs {}", sorted, minpoly);
    }

    #[test]
    fn vertices_interpolate_exactly((n, values) in sized_table()) {
        let v = SetFunction::new(n, values).unwrap();
        let a = v.mobius_transform();
        for mask in 0..=full_mask(n) {
            let x = PointVector::vertex(n, mask);
            let sorted = v.eval_lovasz_sorted_exact(&x.exact_coords()).unwrap();
            prop_assert_eq!(&sorted, v.value(mask));
            let minpoly = a.eval_lovasz_minpoly(&x).unwrap();
            let expected = sorted.to_f64().unwrap();
            prop_assert!((minpoly - expected).abs() < 1e-12);
        }
    }
}

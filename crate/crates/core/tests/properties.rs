use std::sync::Arc;

use proptest::prelude::*;
use ramislope_core::field::{Fe, FiniteField};
use ramislope_core::numerics::{int, rat, PiecewiseLinearFn, Rational};
use ramislope_core::series::LaurentSeries;

fn f9() -> Arc<FiniteField> {
    FiniteField::with_order(3, 9).unwrap()
}

fn elt(k: u32) -> Fe {
    match k {
        0 => Fe::ZERO,
        _ => f9().generator_power(k as i64 - 1),
    }
}

fn series(val_range: std::ops::Range<i64>) -> impl Strategy<Value = LaurentSeries> {
    (val_range, prop::collection::vec(0u32..9, 1..12), 8i64..24).prop_map(|(val, cs, rel)| {
        let coeffs = cs.into_iter().map(elt).collect();
        LaurentSeries::from_coeffs(&f9(), val, coeffs, val + rel)
    })
}

// A series of positive valuation: something that can be substituted.
fn image() -> impl Strategy<Value = LaurentSeries> {
    (1u32..9, prop::collection::vec(0u32..9, 0..6), 1i64..3).prop_map(|(lead, rest, v)| {
        let mut coeffs = vec![elt(lead)];
        coeffs.extend(rest.into_iter().map(elt));
        LaurentSeries::from_coeffs(&f9(), v, coeffs, v + 30)
    })
}

/// Herbrand-shaped: identity on [-1, 0] then decreasing slopes `1/d`.
fn herbrand() -> impl Strategy<Value = PiecewiseLinearFn> {
    prop::collection::vec((1i64..5, 1i64..4), 0..4).prop_map(|steps| {
        let mut bps = vec![int(-1)];
        let mut slopes = vec![int(1)];
        let mut x = int(0);
        let mut d = 1;
        for (len, mult) in steps {
            d *= mult + 1;
            bps.push(x.clone());
            slopes.push(rat(1, d));
            x += int(len);
        }
        PiecewiseLinearFn::new(bps, slopes, int(-1)).unwrap()
    })
}

fn point() -> impl Strategy<Value = Rational> {
    (-12i64..240, 1i64..13).prop_map(|(n, d)| rat(n, d).max(int(-1)))
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(a in series(-3..4), b in series(-3..4), c in series(-3..4)) {
        prop_assert!(a.add(&b).agrees_with(&b.add(&a)));
        prop_assert!(a.add(&b).add(&c).agrees_with(&a.add(&b.add(&c))));
        prop_assert!(a.sub(&a).is_zero_to_precision());
    }

    #[test]
    fn multiplication_is_a_ring_law(a in series(-3..4), b in series(-3..4), c in series(-3..4)) {
        prop_assert!(a.mul(&b).agrees_with(&b.mul(&a)));
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&b.add(&c)).agrees_with(&a.mul(&b).add(&a.mul(&c))));
        prop_assert!(a.mul(&LaurentSeries::one(&f9())).agrees_with(&a));
    }

    #[test]
    fn inverse_is_inverse(a in series(-3..4).prop_filter("nonzero", |a| !a.is_zero_to_precision())) {
        let inv = a.inverse().unwrap();
        prop_assert!(a.mul(&inv).agrees_with(&LaurentSeries::one(&f9())));
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(a in series(0..3), b in series(0..3), t in image()) {
        let sa = a.substitute(&t).unwrap();
        let sb = b.substitute(&t).unwrap();
        prop_assert!(a.add(&b).substitute(&t).unwrap().agrees_with(&sa.add(&sb)));
        prop_assert!(a.mul(&b).substitute(&t).unwrap().agrees_with(&sa.mul(&sb)));
    }

    #[test]
    fn substitution_composes(a in series(-2..3), s in image(), t in image()) {
        let lhs = a.substitute(&s).unwrap().substitute(&t).unwrap();
        let rhs = a.substitute(&s.substitute(&t).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn compose_matches_pointwise(f in herbrand(), g in herbrand(), xs in prop::collection::vec(point(), 100)) {
        let fg = f.compose(&g).unwrap();
        for x in &xs {
            prop_assert_eq!(fg.eval(x).unwrap(), f.eval(&g.eval(x).unwrap()).unwrap());
        }
    }

    #[test]
    fn invert_roundtrips(f in herbrand(), x in point()) {
        let g = f.invert().unwrap();
        prop_assert_eq!(g.eval(&f.eval(&x).unwrap()).unwrap(), x.clone());
        prop_assert_eq!(f.compose(&g).unwrap(), PiecewiseLinearFn::identity());
    }

    #[test]
    fn herbrand_functions_stay_below_identity(f in herbrand(), x in point()) {
        prop_assert!(f.is_concave());
        prop_assert!(f.is_herbrand_shaped());
        if x >= int(0) {
            prop_assert!(f.eval(&x).unwrap() <= x.clone());
            prop_assert!(f.invert().unwrap().eval(&x).unwrap() >= x);
        }
    }
}

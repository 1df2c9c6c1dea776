use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use suq2_core::field::poly::gcd;
use suq2_core::field::{BasePoly, BaseRat, FieldElem, Point};

fn poly() -> impl Strategy<Value = BasePoly> {
    prop::collection::vec(((0u32..3, 0u32..2, 0u32..2), -4i64..=4), 0..4).prop_map(|ts| {
        BasePoly::from_terms(ts.into_iter().map(|((a, b, c), n)| ([a, b, c], BigInt::from(n))))
    })
}

fn nonzero_poly() -> impl Strategy<Value = BasePoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rat() -> impl Strategy<Value = BaseRat> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| BaseRat::new(n, d).unwrap())
}

fn elem() -> impl Strategy<Value = FieldElem> {
    (rat(), rat()).prop_map(|(a, b)| FieldElem::new(a, b))
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn point(u: (i64, i64), t: i64, k: i64) -> Point {
    Point::from_u(&ratio(u.0, u.1), ratio(t, 1), ratio(k, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(x in elem(), y in elem(), z in elem()) {
        prop_assert_eq!(x.add_ref(&y), y.add_ref(&x));
        prop_assert_eq!(x.mul_ref(&y), y.mul_ref(&x));
        prop_assert_eq!(x.add_ref(&y).add_ref(&z), x.add_ref(&y.add_ref(&z)));
        prop_assert_eq!(x.mul_ref(&y).mul_ref(&z), x.mul_ref(&y.mul_ref(&z)));
        prop_assert_eq!(x.mul_ref(&y.add_ref(&z)), x.mul_ref(&y).add_ref(&x.mul_ref(&z)));
        prop_assert!(x.sub_ref(&x).is_zero());
        prop_assert!(x.add_ref(&x.neg_ref()).is_zero());
    }

    #[test]
    fn nonzero_elements_invert(x in elem()) {
        prop_assume!(!x.is_zero());
        let inv = x.invert().unwrap();
        prop_assert!(x.mul_ref(&inv).is_one());
        prop_assert_eq!(inv.invert().unwrap(), x.clone());
    }

    #[test]
    fn norm_is_product_with_conjugate(x in elem()) {
        let n = x.mul_ref(&x.conj());
        prop_assert!(!n.has_s());
        prop_assert_eq!(n, FieldElem::from_rat(x.norm()));
    }

    #[test]
    fn s_squares_to_r(x in elem()) {
        let s = FieldElem::s();
        prop_assert_eq!(s.mul_ref(&s), FieldElem::r());
        prop_assert_eq!(x.mul_ref(&s).mul_ref(&s), x.mul_ref(&FieldElem::r()));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        x in elem(),
        y in elem(),
        u in (1i64..9, 1i64..9).prop_filter("u != 1", |(a, b)| a != b),
        t in 1i64..6,
        k in 1i64..6,
    ) {
        let pt = point(u, t, k);
        let (Ok(ex), Ok(ey)) = (x.eval_at(&pt), y.eval_at(&pt)) else { return Ok(()) };
        prop_assert_eq!(x.add_ref(&y).eval_at(&pt).unwrap(), &ex + &ey);
        prop_assert_eq!(x.mul_ref(&y).eval_at(&pt).unwrap(), &ex * &ey);
        prop_assert_eq!(FieldElem::s().eval_at(&pt).unwrap() * FieldElem::s().eval_at(&pt).unwrap(),
            FieldElem::r().eval_at(&pt).unwrap());
    }

    #[test]
    fn canonical_text_round_trips(x in elem()) {
        let text = x.to_string();
        let back: FieldElem = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, x);
    }

    #[test]
    fn gcd_divides_and_contains_common_factor(a in nonzero_poly(), b in nonzero_poly(), h in nonzero_poly()) {
        let (ah, bh) = (a.mul(&h), b.mul(&h));
        let g = gcd(&ah, &bh);
        prop_assert!(ah.div_exact(&g).is_some());
        prop_assert!(bh.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&h).is_some());
    }

    #[test]
    fn rational_functions_are_reduced(n in poly(), d in nonzero_poly(), h in nonzero_poly()) {
        let x = BaseRat::new(n.mul(&h), d.mul(&h)).unwrap();
        prop_assert_eq!(x, BaseRat::new(n, d).unwrap());
    }
}

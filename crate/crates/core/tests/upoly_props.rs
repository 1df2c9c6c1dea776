use num_rational::BigRational;
use proptest::prelude::*;
use suq2_core::certify::upoly::{certifies_single_root, count_roots, isolate_roots, UPoly};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn upoly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-6i64..=6, 1..8).prop_map(|c| UPoly::from_i64s(&c))
}

/// Distinct rationals n/12 in (−1, 1).
fn roots() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(-11i64..=11, 0..6).prop_map(|s| s.into_iter().collect())
}

fn from_roots(rs: &[i64], mult: usize) -> UPoly {
    rs.iter().fold(UPoly::from_i64s(&[3]), |acc, &n| {
        (0..mult).fold(acc, |a, _| a.mul(&UPoly::new(vec![r(-n, 12), r(1, 1)])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interpolation_recovers_the_polynomial(p in upoly()) {
        let xs: Vec<BigRational> = (0..=p.degree() as i64).map(|i| r(2 * i + 1, 3)).collect();
        let ys: Vec<BigRational> = xs.iter().map(|x| p.eval(x)).collect();
        prop_assert_eq!(UPoly::interpolate(&xs, &ys), p);
    }

    #[test]
    fn division_identity(a in upoly(), b in upoly()) {
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.div_rem(&b);
        prop_assert_eq!(quo.mul(&b).add(&rem), a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn sturm_counts_planted_roots(rs in roots(), mult in 1usize..3) {
        let p = from_roots(&rs, mult);
        let seq = p.square_free().sturm();
        prop_assert_eq!(count_roots(&seq, &r(-1, 1), &r(1, 1)), rs.len());
        let positive = rs.iter().filter(|&&n| n > 0).count();
        prop_assert_eq!(count_roots(&seq, &r(0, 1), &r(1, 1)), positive);
    }

    #[test]
    fn isolation_separates_each_root(rs in roots()) {
        let p = from_roots(&rs, 1);
        let w = r(1, 1_000_000);
        let ivs = isolate_roots(&p, &r(-1, 1), &r(1, 1), &w);
        prop_assert_eq!(ivs.len(), rs.len());
        for (iv, &n) in ivs.iter().zip(&rs) {
            prop_assert!(iv.width() <= w);
            let x = r(n, 12);
            prop_assert!(iv.lo <= x && x <= iv.hi);
        }
        for iv in ivs.iter().filter(|iv| iv.lo != iv.hi) {
            prop_assert!(certifies_single_root(&p, iv));
        }
    }

    #[test]
    fn square_free_part_of_a_square(rs in roots()) {
        let p = from_roots(&rs, 1).monic();
        prop_assert_eq!(from_roots(&rs, 2).square_free().monic(), p);
    }
}
